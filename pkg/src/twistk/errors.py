"""Exception types raised across the package."""


class TwistKError(Exception):
    """Base class for every error raised by twistk."""


class ShapeError(TwistKError, ValueError):
    pass


class IllFormedMap(TwistKError, ValueError):
    """A module map does not send source relations into target relations."""


class TargetMismatch(TwistKError, ValueError):
    pass


class ModulusMismatch(TwistKError, ValueError):
    pass


class NotASubgroup(TwistKError, ValueError):
    pass


class IllFormedHom(TwistKError, ValueError):
    """A per-factor exponent map is not a homomorphism into Z_n."""


class CharacterDomainMismatch(TwistKError, ValueError):
    pass


class InvalidPair(TwistKError, ValueError):
    """(n, k, ell) violates k*ell = 0 mod n or the range constraints."""


class ConstantMismatch(TwistKError, ArithmeticError):
    pass


class UnsupportedParameter(TwistKError, ValueError):
    pass
