"""cqreduce: classical sphere distributions reduced to quantum states.

A classical state here is a probability distribution over the complex unit
sphere.  Averaging the rank-1 projectors psi psi^dagger against it (times
hbar) yields a density matrix, and the classical mean of any Hermitian-form
observable equals the trace pairing with that matrix.  This package builds
the sphere measure, the observables and their canonical flows, the
oscillator model behind the sphere coordinates, and closed-form plus Monte
Carlo reductions that cross-check each other.
"""

from ._kernels import backend_name
from ._version import __version__
from .config import ModelConfig
from .observables import (
    FLOW_RATE,
    FlowResult,
    HermitianObservable,
    evaluate_form,
    generate_flow,
    hermitian_exponential,
)
from .oscillator import (
    PhasePoint,
    from_sphere,
    oscillator_evolve,
    rest_energy,
    shell_energy,
    to_sphere,
)
from .reduction import (
    DensityMatrix,
    ReductionReport,
    VerificationReport,
    born_rule_verify,
    classical_expectation,
    quantum_expectation,
    reduce_batch,
    reduce_closed_form,
    reduce_monte_carlo,
)
from .sphere import (
    MomentReport,
    SampleBatch,
    StateVector,
    moment_report,
    random_unitary,
    sample_uniform,
)
from .states import (
    ClassicalState,
    ExponentialOverlap,
    Mixture,
    PointMass,
    ProjectivePower,
    Uniform,
    WeightedDensity,
    density_eval,
    draw_samples,
)

__all__ = [
    "__version__",
    "backend_name",
    "ModelConfig",
    "StateVector",
    "SampleBatch",
    "MomentReport",
    "sample_uniform",
    "moment_report",
    "random_unitary",
    "HermitianObservable",
    "FlowResult",
    "FLOW_RATE",
    "evaluate_form",
    "generate_flow",
    "hermitian_exponential",
    "ClassicalState",
    "PointMass",
    "Mixture",
    "Uniform",
    "WeightedDensity",
    "ProjectivePower",
    "ExponentialOverlap",
    "density_eval",
    "draw_samples",
    "DensityMatrix",
    "ReductionReport",
    "VerificationReport",
    "reduce_closed_form",
    "reduce_batch",
    "reduce_monte_carlo",
    "classical_expectation",
    "quantum_expectation",
    "born_rule_verify",
    "PhasePoint",
    "to_sphere",
    "from_sphere",
    "oscillator_evolve",
    "shell_energy",
    "rest_energy",
]
