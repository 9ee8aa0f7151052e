"""Normal forms and decidable equality for resistor networks over positive division rigs."""

from .network import (
    Circuit,
    CircuitError,
    CompositionError,
    Edge,
    InvalidConductance,
    canonicalize,
    cap,
    compose,
    cup,
    empty,
    generator,
    identity,
    parallel,
    resistor,
    series,
    spider,
    star,
    swap,
    tensor,
    transpose,
)
from .normalize import (
    FixedOrder,
    MinDegree,
    NormalForm,
    RandomOrder,
    decide_eq,
    is_normal,
    normalize,
)
from .rewrite import (
    Measure,
    RewriteStep,
    Trace,
    eliminate_internal,
    measure,
    merge_parallel,
    short_circuit,
    star_to_mesh,
)
from .rig import FLOAT, LATTICE, RATIONAL, TROPICAL, Rig, RigError, RigValue, get_rig

__version__ = "0.1.0"
