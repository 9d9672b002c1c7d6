"""Exception hierarchy. Every domain error derives from :class:`KunzError` so the
CLI can report the class name and exit with status 1."""


class KunzError(Exception):
    pass


class EmptyInput(KunzError, ValueError):
    pass


class NotCoFinite(KunzError, ValueError):
    pass


class FullMonoid(KunzError, ValueError):
    pass


class NotSpecialGap(KunzError, ValueError):
    pass


class WrongMultiplicity(KunzError, ValueError):
    pass


class LengthMismatch(KunzError, ValueError):
    pass


class AmbientMismatch(KunzError, ValueError):
    pass


class NotAnIdeal(KunzError, ValueError):
    pass


class NotNormalized(KunzError, ValueError):
    pass


class FullSet(KunzError, ValueError):
    pass


class BoundTooSmall(KunzError, ValueError):
    pass


class IdempotentInput(KunzError, ValueError):
    pass


class NotALattice(KunzError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class UnsupportedMultiplicityForLayout(KunzError, ValueError):
    pass


class InvalidPoset(KunzError, ValueError):
    pass


class NotMultiplicityThreePoset(KunzError, ValueError):
    pass


class UnknownCheckName(KunzError, ValueError):
    pass
