"""
Enumeraciones del sistema.
"""

from enum import Enum

from .errors import ConfigError


class _ParsableEnum(Enum):
    """Enum que acepta su valor o alias en minúsculas desde la línea de comandos."""

    @classmethod
    def parse(cls, text: str):
        key = text.strip().lower()
        for member in cls:
            if key == member.value or key in getattr(member, 'aliases', ()):
                return member
        valid = ', '.join(m.value for m in cls)
        raise ConfigError(f"Valor {text!r} no válido para {cls.__name__} (válidos: {valid})")


class VariableKind(_ParsableEnum):
    """Tipo de una variable de la tabla."""
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


class VarianceMode(_ParsableEnum):
    """Modelo de varianza para pares mixtos discreto-continuo."""
    HOMOGENEOUS = "hom"           # varianza común a todos los niveles
    HETEROGENEOUS = "het"         # una varianza por nivel

    @property
    def aliases(self):
        return ('homogeneous',) if self is VarianceMode.HOMOGENEOUS else ('heterogeneous',)


class Criterion(_ParsableEnum):
    """Criterio de penalización de los pesos de arista."""
    AIC = "aic"
    BIC = "bic"


class Method(_ParsableEnum):
    """Variante de puntuación de los path-steps."""
    EC = "ec"                     # coeficiente de entropía (núcleos + KL)
    R2 = "r2"                     # R² ajustado de OLS


class EdgeKind(_ParsableEnum):
    """Combinación de tipos de un par de variables."""
    DD = "dd"                     # discreta-discreta
    CC = "cc"                     # continua-continua
    MIX_HOM = "mix_hom"           # mixta, varianza homogénea
    MIX_HET = "mix_het"           # mixta, varianza heterogénea


class VarrankScheme(_ParsableEnum):
    """Esquema de combinación relevancia/redundancia de varrank."""
    MID = "mid"                   # diferencia
    MIQ = "miq"                   # cociente
