"""Exception types raised across chbkit."""


class ChbError(ValueError):
    """Base class for every validation failure in the package."""


class EvenLevels(ChbError):
    pass


class TooFewLevels(ChbError):
    pass


class NonPositive(ChbError):
    pass


class ModulationOutOfRange(ChbError):
    pass


class CellOutOfRange(ChbError):
    pass


class SampleRateTooLow(ChbError):
    pass


class CarrierTooSlow(ChbError):
    pass


class EmptyWaveform(ChbError):
    pass


class NyquistViolation(ChbError):
    pass


class ZeroFundamental(ChbError):
    pass


class EvenHarmonic(ChbError):
    pass


class BoostRequired(ChbError):
    pass


class NotAchievable(ChbError):
    pass


class PfOutOfRange(ChbError):
    pass


class MismatchedSampling(ChbError):
    pass
