"""
Hamiltonian vector fields and the passage from r-infinity matrices to Rota-Baxter operators
"""

from .hamiltonian import hamiltonian, hamiltonian_of_derivation, hlr_algebra
from .diagram import coadjoint, rmatrix_to_rb, bridge_morphism, check_bridge_diagram

__all__ = [
    'hamiltonian', 'hamiltonian_of_derivation', 'hlr_algebra',
    'coadjoint', 'rmatrix_to_rb', 'bridge_morphism', 'check_bridge_diagram',
]
