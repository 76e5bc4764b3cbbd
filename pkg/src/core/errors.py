"""
Exception hierarchy shared by the core modules and the command line.

Every error carries the labels, path or count that triggered it so the CLI
can print a single actionable line.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
from typing import Optional


class GotasError(Exception):
    """Base class for every domain error raised by the package."""


class UniverseError(GotasError):
    """Raised when a universe label list is empty, repeats a label or is too large."""


class UniverseMismatch(GotasError):
    """Raised when two values built over different universes are combined."""

    def __init__(self, left: int, right: int):
        super().__init__(f"universe mismatch: width {left} vs width {right}")
        self.left = left
        self.right = right


class OrderError(GotasError):
    """Raised when a relation fails one of the partial order axioms."""


class MissingReflexive(OrderError):
    def __init__(self, x: str):
        super().__init__(f"order is not reflexive: ({x}, {x}) missing")
        self.x = x


class AntisymmetryViolation(OrderError):
    def __init__(self, x: str, y: str):
        super().__init__(f"order is not antisymmetric: ({x}, {y}) and ({y}, {x}) both present")
        self.x = x
        self.y = y


class TransitivityViolation(OrderError):
    def __init__(self, x: str, y: str, z: str):
        super().__init__(f"order is not transitive: ({x}, {y}) and ({y}, {z}) present but ({x}, {z}) missing")
        self.x = x
        self.y = y
        self.z = z


class CapExceeded(GotasError):
    """Raised when an enumeration would exceed the configured cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"enumeration over {size} irreducible base members exceeds cap {cap} (2^{size} > {cap})")
        self.size = size
        self.cap = cap


class UniverseTooLarge(GotasError):
    """Raised when exhaustive mode is forced on a universe beyond the sweep caps."""

    def __init__(self, size: int, limit: int):
        super().__init__(f"exhaustive sweep requested for |U| = {size}, limit is {limit}")
        self.size = size
        self.limit = limit


class EmptySetAccuracy(GotasError):
    def __init__(self) -> None:
        super().__init__("accuracy is only defined for non-empty sets")


class NotAPartition(GotasError):
    def __init__(self, reason: str):
        super().__init__(f"not a partition: {reason}")
        self.reason = reason


class SchemaError(GotasError):
    """Raised when a document does not match the expected schema; `path` locates the field."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"schema error at {path}: {reason}")
        self.path = path
        self.reason = reason


class UnknownLabel(GotasError):
    def __init__(self, name: str, where: Optional[str] = None):
        suffix = f" (in {where})" if where else ""
        super().__init__(f"unknown label {name!r}{suffix}")
        self.name = name


class UnknownAttribute(GotasError):
    def __init__(self, name: str):
        super().__init__(f"unknown attribute {name!r}")
        self.name = name


class UnknownProposition(GotasError):
    def __init__(self, name: str):
        super().__init__(f"unknown proposition id {name!r}")
        self.name = name


class ConfigError(GotasError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"invalid {field}: {reason}")
        self.field = field
        self.reason = reason
