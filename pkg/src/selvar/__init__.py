"""
Selección automática de variables sobre bosques AIC/BIC de datos mixtos.

Este paquete construye el bosque de máxima verosimilitud entre variables
discretas y continuas, recorre los path-steps alrededor de un objetivo y
elige el mejor conjunto de predictores por coeficiente de entropía (densidad
núcleo) o por R² ajustado.
"""

__version__ = "0.1.0"
__author__ = "Sergio"
__description__ = "Selección de variables por path-steps sobre bosques AIC/BIC"
