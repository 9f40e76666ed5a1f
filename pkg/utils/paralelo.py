"""
Procesamiento por bloques contiguos de un rango de índices.

Los resultados parciales se devuelven en el orden de los bloques, de modo
que cualquier reducción por suma exacta es idéntica para cualquier número
de trabajadores.
"""

import logging
import time
from typing import Any, Callable, List, Optional, Tuple

from joblib import Parallel, delayed

from utils.config_manager import config_manager

logger = logging.getLogger('paralelo')


def dividir_rango(inicio: int, fin: int, n_bloques: int, minimo: int = 1) -> List[Tuple[int, int]]:
    """
    Parte [inicio, fin) en como mucho n_bloques intervalos contiguos.

    Ningún bloque queda por debajo de `minimo` elementos salvo que el
    rango completo sea más corto.
    """
    total = fin - inicio
    if total <= 0:
        return []
    n_bloques = max(1, min(n_bloques, total // max(minimo, 1) or 1))
    base, resto = divmod(total, n_bloques)
    bloques, actual = [], inicio
    for k in range(n_bloques):
        largo = base + (1 if k < resto else 0)
        bloques.append((actual, actual + largo))
        actual += largo
    return bloques


class ProcesadorParalelo:
    """
    Reparte una función sobre bloques de un rango con joblib.

    Con un único trabajador todo se ejecuta en el proceso actual; la
    función y sus argumentos deben poder serializarse con pickle cuando
    se piden varios.
    """

    def __init__(self, workers: Optional[int] = None, bloque_minimo: Optional[int] = None,
                 backend: str = 'loky'):
        self.workers = int(workers if workers is not None else config_manager.get('paralelo.workers', 1))
        self.bloque_minimo = int(bloque_minimo if bloque_minimo is not None
                                 else config_manager.get('paralelo.bloque', 4096))
        self.backend = backend
        if self.workers < 1:
            self.workers = 1

    def mapear_rango(self, func: Callable[..., Any], total: int, *args, **kwargs) -> List[Any]:
        """
        Aplica func(inicio, fin, *args, **kwargs) a cada bloque de [0, total).

        Returns:
            Lista de resultados parciales en el orden de los bloques
        """
        if total <= 0:
            return []

        # Varios bloques por trabajador para repartir mejor la carga
        n_bloques = self.workers * 4 if self.workers > 1 else 1
        bloques = dividir_rango(0, total, n_bloques, self.bloque_minimo)

        start_time = time.time()
        if self.workers > 1 and len(bloques) > 1:
            with Parallel(n_jobs=min(self.workers, len(bloques)), backend=self.backend) as parallel:
                resultados = parallel(delayed(func)(a, b, *args, **kwargs) for a, b in bloques)
        else:
            resultados = [func(a, b, *args, **kwargs) for a, b in bloques]

        elapsed = time.time() - start_time
        logger.debug(f"{total} índices en {len(bloques)} bloques con {self.workers} trabajadores "
                     f"({elapsed:.3f}s)")
        return resultados
