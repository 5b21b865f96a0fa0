"""Exception types shared across the toolkit."""


class ZnComplexError(Exception):
    """Base class for all toolkit errors."""


class InvalidComplexError(ZnComplexError):
    """A simplicial complex failed validation; carries the report."""

    def __init__(self, report):
        super().__init__("; ".join(report.violations) or "invalid complex")
        self.report = report


class ScxFormatError(ZnComplexError):
    """Malformed .scx input."""


class SpurError(ZnComplexError):
    """A vertex set handed to a collapse is not a spur."""

    def __init__(self, report):
        super().__init__("; ".join(report.violations) or "not a spur")
        self.report = report


class UnsupportedSizeError(ZnComplexError):
    """Requested size falls in the excluded cases (no orthogonal pair)."""


class TooLongError(ZnComplexError):
    """A word does not reduce to at most three generator powers."""

    def __init__(self, word):
        super().__init__(f"word does not reduce to <= 3 syllables: {word!r}")
        self.word = word


class NotFreeAbelianError(ZnComplexError):
    """The abelianization has torsion; carries the torsion coefficients."""

    def __init__(self, torsion):
        super().__init__(f"abelianization has torsion {list(torsion)}")
        self.torsion = tuple(torsion)


class SparsityError(ZnComplexError):
    """A relation set violates a sparsity precondition; may carry a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SgHypothesisError(ZnComplexError):
    """The per-plane edge-count hypothesis fails; carries a witness subset."""

    def __init__(self, witness):
        super().__init__(f"plane hypothesis violated on vertex set {sorted(witness)}")
        self.witness = frozenset(witness)


class PipelineStageError(ZnComplexError):
    """A pipeline stage's precondition failed."""

    def __init__(self, stage, message, witness=None):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage
        self.witness = witness
