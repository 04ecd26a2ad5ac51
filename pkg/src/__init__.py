"""
Orthoforms
Exact verification of the modular form ring computations for O(2,4;Z)
"""

__version__ = "1.0.0"

# modules import each other by bare name with src/ on sys.path
from polynomial import Polynomial, VariableSpace, parse
from elimination import PolyMatrix, bareiss_det, binary_discriminant, resultant
from weierstrass import WeierstrassData, run_pipeline
from irreducibility import certify_irreducible, replay_certificate
from graded_ring import WeightedPresentation, hilbert_from_counting, hilbert_from_rational
from group_f2 import MatrixF2, generate_group, s6_signature_check
from symfunc import SixPoint, vandermonde_disc
from visualization import plot_hilbert_series, plot_order_histogram, plot_support

__all__ = [
    'Polynomial', 'VariableSpace', 'parse',
    'PolyMatrix', 'bareiss_det', 'binary_discriminant', 'resultant',
    'WeierstrassData', 'run_pipeline',
    'certify_irreducible', 'replay_certificate',
    'WeightedPresentation', 'hilbert_from_counting', 'hilbert_from_rational',
    'MatrixF2', 'generate_group', 's6_signature_check',
    'SixPoint', 'vandermonde_disc',
    'plot_hilbert_series', 'plot_order_histogram', 'plot_support',
]
