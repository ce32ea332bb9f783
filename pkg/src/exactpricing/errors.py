"""Exception hierarchy shared by all exactpricing modules."""


class ExactPricingError(Exception):
    """Base class for every error raised by this package."""


class InvalidInstance(ExactPricingError):
    """Input data violates an instance invariant (bad probability, empty
    attribute list, unsorted sequence, target out of range, ...)."""


class EqualityInstance(InvalidInstance):
    """A square-root-sum instance has sum(sqrt(a_i)) exactly equal to K.

    The decision pipelines require strict inequality; equality is detected
    symbolically and rejected up front.
    """


class InstanceTooLarge(ExactPricingError):
    """A radicand exceeded the configured factoring budget, so its
    square-free decomposition could not be certified."""


class BudgetExceeded(ExactPricingError):
    """A pseudo-polynomial computation would exceed the configured state
    budget."""


class TooManyAttributes(ExactPricingError):
    """Brute-force outcome enumeration was requested for more attributes
    than the enumeration cap allows."""


class TooManyItems(ExactPricingError):
    """Exact unit-demand evaluation was requested for more items than the
    2^n profile enumeration cap allows."""


class SearchTooLarge(ExactPricingError):
    """The Cartesian product of candidate price sets exceeds the search
    cap."""


class DecodeError(ExactPricingError):
    """A tail probability could not be decoded into subset counts: it is
    not an integer multiple of p1^n, has too many digits, or a digit
    exceeds its binomial bound."""


class ProofViolation(ExactPricingError):
    """An exactly-checked structural property of a reduction failed.

    This error must never fire on valid inputs; it exists so that any
    discrepancy between the implementation and the case analysis it
    relies on is loud rather than silent.
    """
