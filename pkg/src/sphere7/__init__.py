"""Quantization toolkit for the standard contact seven-sphere.

Layers, bottom up:

    quaternions  exact-as-possible quaternion/matrix arithmetic, group sections
    coframe      sphere points, tangents, the pulled-back coframe, Reeb flow
    u2h          the ten-dimensional Lie algebra with exact structure constants
    weyl         normal-ordered oscillator algebra, formal square roots,
                 the ten formal generators and their bracket reports
    classical    the commutative Poisson mirror of the weyl layer
    fock         truncated Fock representations, exact and partial-sum
    connection   flat connections, parallel transport, Born probabilities
    cli          batch verification / simulation driver
"""

from .coframe import (CoframeSample, SpherePoint, TangentVector, ToricPoint,
                      contact_alpha, eds_residual, gauge_overlap_check,
                      pullback, pullback_n, pullback_s, reeb_flow,
                      reeb_tangent, toric_embed, toric_tangent)
from .connection import (PathSpec, TransportResult, born_probability,
                         connection_matrix, connection_sample,
                         curvature_residual, parallel_transport,
                         reeb_transport)
from .fock import (basis, build_rho, build_rho_partial, casimir_deviation,
                   commutant_dimension, dim, exponentiate, filtration_check,
                   k_spectrum, matrix_of_laurent, matrix_of_weyl,
                   partial_sum_distance, verify_brackets, verify_reality)
from .quaternions import (PatchError, QMatrix2, Quaternion, qconj, qinv,
                          qmul, qnormsq, section_n, section_s,
                          transition_tau)
from .u2h import (LieElement, SPINOR_GENERATORS, VECTOR_GENERATORS, bracket,
                  bracket_gens, basis_change, contraction_constants,
                  contraction_limit, grading_decomposition, reality,
                  verify_jacobi)
from .weyl import (LaurentElement, Polymeromorphic, PolyNM, WeylElement,
                   embedded_generators, passage, sqrt_partial_sum,
                   verify_embedding, weyl_comm, weyl_dagger, weyl_mul)
from .classical import (PoissonElement, classical_generators,
                        poisson_bracket, verify_classical)

__version__ = "0.1.0"
