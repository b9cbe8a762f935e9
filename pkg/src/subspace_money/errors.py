"""Exception types shared across the package."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration or dense allocation would exceed the configured budget."""


class CodeSearchError(RuntimeError):
    """Rejection sampling exhausted max_attempts without finding an applicable code."""


class SyndromeCollisionError(RuntimeError):
    """Two distinct low-weight errors share a syndrome, disproving d >= 2q+1."""


class SerialCollisionError(RuntimeError):
    """Serial derivation kept colliding after exhausting the retry nonce bound."""


class UnknownSerialError(KeyError):
    """The serial number was never issued by this registry."""


class UndecodableError(RuntimeError):
    """No per-coset predicate matched; the state is outside every tolerated coset."""
