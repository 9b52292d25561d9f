from config import config


class ShadowError(Exception):
    """
    Base class for every error raised by the library.
    Each error carries the process exit code the CLI reports for it.
    """
    exit_code = 1


# --- Input Validation (exit 2) ---

class InputValidationError(ShadowError):
    exit_code = config.EXIT_INPUT_VALIDATION


class SpecFormatError(InputValidationError):
    pass


class ColumnMismatchError(InputValidationError):
    pass


class IllDefinedHomError(InputValidationError):
    pass


class NonComposableError(InputValidationError):
    pass


class RingAxiomError(InputValidationError):
    """Raised when a ring spec fails one of the ring or involution axioms."""
    def __init__(self, axiom, detail):
        self.axiom = axiom
        self.detail = detail
        super().__init__(f"ring axiom '{axiom}' fails: {detail}")


class NotARingHomError(InputValidationError):
    pass


class NontrivialInvolutionError(InputValidationError):
    pass


class MonoidError(InputValidationError):
    pass


class DoubleCosetError(InputValidationError):
    pass


class EquivarianceError(InputValidationError):
    pass


class ModuleAxiomError(InputValidationError):
    pass


class NonCommutingCubeError(InputValidationError):
    pass


class StructureError(InputValidationError):
    pass


# --- Infeasible Computation (exit 3) ---

class InfeasibleComputationError(ShadowError):
    exit_code = config.EXIT_INFEASIBLE


class InfiniteFiberError(InfeasibleComputationError):
    pass


class TruncationDepthError(InfeasibleComputationError):
    pass


class DegreeOutOfRangeError(InfeasibleComputationError):
    pass


class WindowNotStabilizedError(InfeasibleComputationError):
    pass


# --- Certificate Failure (exit 4) ---

class CertificateFailure(ShadowError):
    exit_code = config.EXIT_CERTIFICATE_FAILURE


class ConsistencyError(CertificateFailure):
    pass
