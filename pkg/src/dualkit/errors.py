"""Exception hierarchy shared by every dualkit module."""


class DualkitError(Exception):
    """Base class for all dualkit errors."""


class CycleError(DualkitError, ValueError):
    """The reflexive-transitive closure of a relation is not antisymmetric."""


class EmptyError(DualkitError, ValueError):
    pass


class SizeError(DualkitError, ValueError):
    """An enumeration would exceed a configured cap."""


class GroundMismatch(DualkitError, ValueError):
    pass


class NotJoinSemilattice(DualkitError, ValueError):
    pass


class NotDistributive(DualkitError, ValueError):
    pass


class NotBounded(DualkitError, ValueError):
    pass


class KindError(DualkitError, ValueError):
    pass


class NotMonotone(DualkitError, ValueError):
    pass


class NotSubalgebra(DualkitError, ValueError):
    pass


class NotHom(DualkitError, ValueError):
    pass


class ArityError(DualkitError, ValueError):
    pass


class UniverseMismatch(DualkitError, ValueError):
    pass
