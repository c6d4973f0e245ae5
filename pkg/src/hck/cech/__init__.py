"""Cech complexes, hypercovers and related constructions over a finite space."""
from .core import (DEFAULT_CAP, FiberProductCech, GenerationCapError, OverXMap, PointwiseMap,
                   SimplicialMapOverX, SimplicialSpace, SimplicialSpaceOverX, SpaceOverX,
                   cech_of_cover, cech_of_map, compare_matching, is_open_covering_map,
                   matching_is_iso, matching_map, matching_object, ordered_cech, reorder,
                   reorder_retraction)
from .hypercover import (ExtraDegeneracy, FDInduction, GeneralizedCover, Hypercover,
                         HypercoverError, LevelWitness, PullbackMap, bounded_hypercover,
                         check_hypercover, coskeletal_extension, coskeleton_over_x,
                         cover_category_cover, dimension, extra_degeneracy, fd_induction_data,
                         hypercover_from_json, hypercover_to_json, is_generalized_cover,
                         is_isomorphism, omega_of_cover, pullback_hypercover, restrict_to_open,
                         to_coskeleton_map, validate_hypercover)

__all__ = [n for n in dir() if not n.startswith("_")]
