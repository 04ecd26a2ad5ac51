"""
Visualization module
Contains functions for plotting Hilbert series, element-order histograms and the exponent support of a polynomial
"""
import matplotlib
import matplotlib.pyplot as plt
import numpy as np
from typing import Dict, Optional

from graded_ring import PowerSeries
from group_f2 import GroupClosure, symmetric_histogram
from polynomial import Polynomial


def _finish(fig: plt.Figure, save_path: Optional[str], show: bool) -> plt.Figure:
    if save_path:
        fig.savefig(save_path, dpi=150, bbox_inches='tight')
    if show and matplotlib.get_backend().lower() != 'agg':
        plt.show()
    return fig


def plot_hilbert_series(
    series: Dict[str, PowerSeries],
    title: str = "Hilbert Series",
    log_scale: bool = True,
    save_path: Optional[str] = None,
    show: bool = True
) -> plt.Figure:
    """
    Coefficients dim A_k against the weight k, one line per ring

    Args:
        series: ring name -> truncated series
        title: figure title
        log_scale: logarithmic y-axis (zero coefficients are skipped)
        save_path: saving path (None if not needed)
        show: whether to show the graph

    Returns:
        Figure as a matplotlib object
    """
    fig, ax = plt.subplots(figsize=(10, 5))
    for name, s in series.items():
        k = np.arange(s.order + 1)
        c = s.coeffs
        mask = c > 0
        ax.plot(k[mask], c[mask], 'o-', markersize=3, linewidth=1, label=name)
    if log_scale:
        ax.set_yscale('log')
    ax.set_xlabel('weight k', fontsize=12)
    ax.set_ylabel('dim of weight-k piece', fontsize=12)
    ax.set_title(title, fontsize=14)
    ax.grid(True, alpha=0.3)
    ax.legend()
    return _finish(fig, save_path, show)


def plot_order_histogram(
    closure: GroupClosure,
    title: str = "Element orders",
    save_path: Optional[str] = None,
    show: bool = True
) -> plt.Figure:
    """
    Element-order histogram of a closure next to that of S6
    """
    reference = symmetric_histogram(6)
    orders = sorted(set(closure.histogram) | set(reference))
    x = np.arange(len(orders))
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.bar(x - 0.2, [closure.histogram.get(o, 0) for o in orders], 0.4,
           label=f'closure (order {closure.order})')
    ax.bar(x + 0.2, [reference.get(o, 0) for o in orders], 0.4, alpha=0.6, label='S6')
    ax.set_xticks(x)
    ax.set_xticklabels([str(o) for o in orders])
    ax.set_xlabel('element order', fontsize=12)
    ax.set_ylabel('count', fontsize=12)
    ax.set_title(title, fontsize=14)
    ax.grid(True, alpha=0.3, axis='y')
    ax.legend()
    return _finish(fig, save_path, show)


def plot_support(
    poly: Polynomial,
    var_x: str,
    var_y: str,
    title: str = "Exponent support",
    save_path: Optional[str] = None,
    show: bool = True
) -> plt.Figure:
    """
    Projection of the monomial exponents onto two variables; marker size is the number of terms
    """
    ix, iy = poly.space.index(var_x), poly.space.index(var_y)
    counts: Dict[tuple, int] = {}
    for m in poly.monomials():
        key = (m[ix], m[iy])
        counts[key] = counts.get(key, 0) + 1
    xs, ys = zip(*counts) if counts else ((), ())
    sizes = [10 + 4 * counts[k] for k in counts]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.scatter(xs, ys, s=sizes, alpha=0.6)
    ax.set_xlabel(f'exponent of {var_x}', fontsize=12)
    ax.set_ylabel(f'exponent of {var_y}', fontsize=12)
    ax.set_title(f'{title} ({len(poly)} terms)', fontsize=14)
    ax.grid(True, alpha=0.3)
    return _finish(fig, save_path, show)
