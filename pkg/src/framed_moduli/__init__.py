"""Exact computations on stable framed quiver representations.

Layers, bottom up: ``kernel`` (fields and matrices), ``quiver`` (paths and their order),
``rep`` (representations, the group action, stability), ``skeleton``, ``charts``
(projection, section, normal forms, isomorphism), ``atlas`` (Plücker coordinates,
classification, relations) and ``oracle`` (brute force over prime fields).
"""
from .atlas import (chart_dimension, classify_coordinates, pluecker, pluecker_of_rep,
                    verify_chart_membership, verify_relations, RelationPoly)
from .charts import (ChartPoint, IsoDecision, complement_paths, iso_check, normal_form, project_chart,
                     recover_arrow_maps, section, transition)
from .errors import FramedModuliError
from .kernel import GF, QQ, Field, Matrix, invert, kernel_basis, minor_det, rref_rank
from .oracle import OracleBudget, orbit_iso_bruteforce, orbit_partition_bruteforce, stability_bruteforce
from .quiver import (Arrow, ExtendedQuiver, FramedPath, FramedShape, PlainPath, Quiver, build_extended_quiver,
                     canonical_compare, compose, enumerate_framed_paths, format_path, parse_path)
from .rep import (FramedRep, GroupElement, RowBundle, act, build_row_bundle, is_stable,
                  max_submodule_in_kernel, row_of_path)
from .sampling import random_stable
from .skeleton import Skeleton, enumerate_abstract_skeleta, greedy_skeleton, path_universe, skeleta_of_rep

__version__ = "0.1.0"
