"""
Erros de domínio do toolkit de parâmetros
"""
from typing import Optional, Tuple


class ParameterError(ValueError):
    """Erro base: todo erro de domínio carrega um código e, opcionalmente, um span"""

    code = "ParameterError"

    def __init__(self, message: str, span: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is not None:
            return f"{self.code} at {self.span[0]}:{self.span[1]}: {self.message}"
        return f"{self.code}: {self.message}"


class OddOrthogonalMultiplicity(ParameterError):
    code = "OddOrthogonalMultiplicity"


class UnpairedNonSelfDual(ParameterError):
    code = "UnpairedNonSelfDual"


class OddTotalDimension(ParameterError):
    code = "OddTotalDimension"


class InvalidBlock(ParameterError):
    code = "InvalidBlock"


class NotEvaluable(ParameterError):
    code = "NotEvaluable"


class PoleAtHalf(ParameterError):
    code = "PoleAtHalf"


class IndexOutOfRange(ParameterError):
    code = "IndexOutOfRange"


class NotNormalizing(ParameterError):
    code = "NotNormalizing"


class NotBounded(ParameterError):
    code = "NotBounded"


class InvalidSignature(ParameterError):
    code = "InvalidSignature"


class IncompleteTable(ParameterError):
    code = "IncompleteTable"


class BlockNotPresent(ParameterError):
    code = "BlockNotPresent"


class BadA(ParameterError):
    code = "BadA"


class ChoiceInvalid(ParameterError):
    code = "ChoiceInvalid"


class OutsideBlock(ParameterError):
    code = "OutsideBlock"


class RankBound(ParameterError):
    code = "RankBound"


class ExprSyntaxError(ParameterError):
    code = "SyntaxError"


class ConfigError(ParameterError):
    code = "ConfigError"
