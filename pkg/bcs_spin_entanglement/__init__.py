"""
BCS Spin Entanglement

Entanglement between the spin-up and spin-down electrons of the BCS ground
state: entanglement spectrum, effective temperatures, the area law of the
spin entanglement entropy and its tie to number fluctuations.
"""

__version__ = '1.0.0'

# Import main components for easier access
from . import amplitudes
from . import thermal
from . import dos_models
from . import observables
from . import oracle
from .amplitudes import ModelParams
from .dos_models import DosModel
