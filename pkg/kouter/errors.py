"""
Exception hierarchy for kouter.

Every error raised by the library derives from KouterError, itself a
ValueError, so callers that already guard with ``except ValueError`` keep
working. Validators do not raise on bad decompositions; they return a
CheckResult (see verify.py).
"""

from typing import Any, Optional


class KouterError(ValueError):
    """Base class for all library errors."""


# ------------------------------ Embedding --------------------------------- #

class EmbeddingError(KouterError):
    pass


class AsymmetricRotation(EmbeddingError):
    def __init__(self, u: int, v: int):
        super().__init__(f"Vertex {u} lists {v} but {v} does not list {u}.")
        self.u, self.v = u, v


class DuplicateEdge(EmbeddingError):
    def __init__(self, u: int, v: int):
        super().__init__(f"Edge ({u}, {v}) appears more than once in the rotation of {u}.")
        self.u, self.v = u, v


class SelfLoop(EmbeddingError):
    def __init__(self, v: int):
        super().__init__(f"Vertex {v} lists itself as a neighbour.")
        self.v = v


class InvalidVertex(EmbeddingError):
    def __init__(self, v: int, n: int):
        super().__init__(f"Vertex id {v} outside [0, {n}).")
        self.v, self.n = v, n


class EulerViolation(EmbeddingError):
    def __init__(self, component_root: int, v: int, e: int, f: int):
        super().__init__(
            f"Rotation system is not plane: component of vertex {component_root} "
            f"has v={v}, e={e}, f={f} (v - e + f = {v - e + f}, expected 2)."
        )
        self.component_root = component_root


class BadHint(EmbeddingError):
    pass


# -------------------------------- Formats --------------------------------- #

class FormatError(KouterError):
    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path, self.line_no, self.message = path, line_no, message


# -------------------------------- Pipeline -------------------------------- #

class NotOuterplanar(KouterError):
    def __init__(self, k: int):
        super().__init__(f"Outerplanar decomposition needs index 1, got k={k}.")
        self.k = k


class MalformedLayer(KouterError):
    pass


class StrippingError(KouterError):
    pass


class CycleCreated(KouterError):
    def __init__(self, u: int, v: int, step: int):
        super().__init__(f"Adding edge ({u}, {v}) in building step {step} closes a cycle.")
        self.u, self.v, self.step = u, v, step


class NotMaximal(KouterError):
    pass


class FactViolation(KouterError):
    def __init__(self, fact: str, message: str, witness: Optional[Any] = None):
        super().__init__(f"Structural check '{fact}' failed: {message}")
        self.fact, self.witness = fact, witness


# ------------------------------ Verification ------------------------------ #

class NotSpanning(KouterError):
    def __init__(self, u: int, v: int):
        super().__init__(f"Non-forest edge ({u}, {v}) joins two different forest trees.")
        self.u, self.v = u, v


class TooLarge(KouterError):
    def __init__(self, what: str, limit: int, actual: int):
        super().__init__(f"Oracle limited to {what} <= {limit}, got {actual}.")
        self.limit, self.actual = limit, actual


# ------------------------------- Generator -------------------------------- #

class Unsatisfiable(KouterError):
    def __init__(self, target_k: int, achieved_k: int, attempts: int):
        super().__init__(
            f"Could not generate index {target_k} after {attempts} attempts "
            f"(last attempt reached k={achieved_k})."
        )
        self.target_k, self.achieved_k = target_k, achieved_k


class UnknownName(KouterError):
    def __init__(self, name: str):
        super().__init__(f"Unknown canned instance '{name}'.")
        self.name = name
