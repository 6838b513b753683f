"""Exception hierarchy with stable error codes (used by the CLI and the service)."""


class ChainCodesError(Exception):
    code = "error"


class InputError(ChainCodesError):
    """Malformed or invalid user input; maps to CLI exit code 2."""

    code = "input_error"


class NotPrime(InputError):
    code = "not_prime"


class NotBasicIrreducible(InputError):
    code = "not_basic_irreducible"


class NotEisenstein(InputError):
    code = "not_eisenstein"


class TruncationOutOfRange(InputError):
    code = "truncation_out_of_range"


class LevelMismatch(ChainCodesError):
    code = "level_mismatch"


class NotAUnit(ChainCodesError):
    code = "not_a_unit"


class SingularGram(ChainCodesError):
    code = "singular_gram"


class InvalidTable(InputError):
    code = "invalid_table"


class TooLarge(InputError):
    code = "too_large"


class Mismatch(ChainCodesError):
    code = "mismatch"


class LengthMismatch(ChainCodesError):
    code = "length_mismatch"


class AmbientMismatch(ChainCodesError):
    code = "ambient_mismatch"


class NotLeftClosed(ChainCodesError):
    code = "not_left_closed"


class SidednessViolation(ChainCodesError):
    code = "sidedness_violation"


class NotCoprime(ChainCodesError):
    code = "not_coprime"


class NotAbelian(ChainCodesError):
    code = "not_abelian"


class DescentFailure(ChainCodesError):
    code = "descent_failure"


class NotComponentAligned(ChainCodesError):
    code = "not_component_aligned"


class NotFlagForm(ChainCodesError):
    code = "not_flag_form"


class UnsupportedTower(ChainCodesError):
    code = "unsupported_tower"
