"""
Excepciones del motor de conteo.

Todas heredan de ErrorKac para que la línea de comandos pueda traducirlas
a códigos de salida sin capturar excepciones ajenas.
"""

from typing import Optional


class ErrorKac(Exception):
    """Error base del sistema de conteo de polinomios de Kac."""


class ErrorValidacion(ErrorKac, ValueError):
    """Datos de entrada inválidos (pesos, λ, vectores de dimensión, configuración)."""

    def __init__(self, mensaje: str, campo: Optional[str] = None):
        super().__init__(mensaje)
        self.campo = campo

    def __reduce__(self):
        return self.__class__, (str(self), self.campo)

    def to_dict(self):
        return {'tipo': 'validacion', 'campo': self.campo, 'mensaje': str(self)}


class ErrorLimite(ErrorKac, RuntimeError):
    """Se superó un límite de recursos configurado; nunca se trunca en silencio."""

    def __init__(self, mensaje: str, exponente: int, limite: int):
        super().__init__(mensaje)
        self.exponente = exponente
        self.limite = limite

    def __reduce__(self):
        # joblib devuelve las excepciones de los trabajadores serializadas
        return self.__class__, (str(self), self.exponente, self.limite)

    def to_dict(self):
        return {
            'tipo': 'limite',
            'mensaje': str(self),
            'exponente': self.exponente,
            'limite': self.limite
        }


class ErrorInterno(ErrorKac, RuntimeError):
    """Condición que sólo puede darse por un error de programación."""

    def to_dict(self):
        return {'tipo': 'interno', 'mensaje': str(self)}


class ErrorIntegralidad(ErrorInterno):
    """Coeficientes interpolados no enteros."""

    def to_dict(self):
        return {'tipo': 'integralidad', 'mensaje': str(self)}


class ErrorIndeterminado(ErrorKac):
    """No hay suficientes puntos de confirmación para fijar el polinomio."""

    def to_dict(self):
        return {'tipo': 'indeterminado', 'mensaje': str(self)}


__all__ = [
    'ErrorKac',
    'ErrorValidacion',
    'ErrorLimite',
    'ErrorInterno',
    'ErrorIntegralidad',
    'ErrorIndeterminado'
]
