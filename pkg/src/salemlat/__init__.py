"""Salem factors, distinguished sublattices, spectral splittings and orbit spans
for isometries of integral lattices."""

from .errors import *  # noqa: F401,F403
from .gallery import GallerySystem, builtin, exterior_square, kummer_augment, torus_from_gl2
from .lattice import (BilinearLattice, LatticeIsometry, Sublattice, apply_endo_poly,
                      distinguished_sublattice, enumerate_norm_vectors, inner,
                      orthogonal_complement, saturated_kernel, signature, verify_isometry)
from .orbit import (InvariantDecomposition, SpanCertificate, invariant_decomposition,
                    iterate_inseparability, orbit_span_dimension, spanning_class_search)
from .poly import (IntPolynomial, SalemClassification, classify_salem, count_real_roots,
                   cyclotomic, is_reciprocal, is_separable, min_poly_of_power,
                   strip_cyclotomic_factors, trace_polynomial)
from .report import AnalysisReport, analyze
from .spectral import (RecursionTrace, SpectralSplit, averaged_class, binomial_identity_check,
                       cantat_recursion, entropy, periodic_orthogonality_test,
                       positive_cone_test, power_iterate_class, spectral_split, wedge_check)

__version__ = "0.1.0"
