"""Exception hierarchy for the greenindex package."""


class GreenIndexError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GreenIndexError):
    """Malformed input data (bad shape, unreadable file, unparseable word)."""


class OutOfRange(GreenIndexError):
    """A Cayley table entry is not a valid element index."""


class NotAssociative(GreenIndexError):
    """A Cayley table fails associativity; carries a witness triple."""

    def __init__(self, x, y, z):
        self.witness = (x, y, z)
        super().__init__(
            f"not associative: ({x}*{y})*{z} != {x}*({y}*{z})"
        )


class NotClosed(GreenIndexError):
    """A claimed subsemigroup is empty or not closed under multiplication."""


class EmptyGenerators(GreenIndexError):
    """A generating set was empty."""


class InvalidHomomorphism(GreenIndexError):
    """A map between semigroups does not respect multiplication."""


class DomainMismatch(GreenIndexError):
    """A homomorphism does not connect the expected source and target."""


class NotGenerating(GreenIndexError):
    """A set claimed to generate a (sub)semigroup does not."""


class InternalInconsistency(GreenIndexError):
    """A witness guaranteed by theory was not found; indicates a bug."""


class NotAnHClass(GreenIndexError):
    """The given element set is not a single relative H-class."""


class NotComparable(GreenIndexError):
    """Two H-classes are neither L-related nor R-related."""


class InvalidLetter(GreenIndexError):
    """A word uses a letter outside its alphabet."""


class NotInSubsemigroup(GreenIndexError):
    """The target element is not generated by the given set."""


class BadInputPresentation(GreenIndexError):
    """An input presentation failed verification against its target."""


class DaggerViolation(GreenIndexError):
    """Schutzenberger presentations do not respect the shared-alphabet
    convention for L-related classes."""


class BoundExceeded(GreenIndexError):
    """An enumeration did not close within the given bounds."""


class AlphabetMismatch(GreenIndexError):
    """Two automata were combined over different alphabets."""


class DelayExceeded(GreenIndexError):
    """Relation composition needed a longer middle-track tail than the
    configured delay bound; carries a witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class BudgetExceeded(GreenIndexError):
    """Black-box exploration exceeded its element budget."""


class HypothesisFails(GreenIndexError):
    """A hypothesis required by a check does not hold; carries a witness."""


class VerificationFailure(GreenIndexError):
    """A CLI-level mathematical verification returned false."""
