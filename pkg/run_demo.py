'''
Quick demo of the cheap checks
Startup: python run_demo.py
'''


import sys
import os

current_dir=os.path.dirname(os.path.abspath(__file__))
src_path=os.path.join(current_dir,'src')
sys.path.insert(0,src_path)


from graded_ring import PRESENTATIONS, a_invariant, character_factor_check, hilbert_from_counting, hilbert_from_rational, series_equal
from group_f2 import SYMPLECTIC_GENERATORS, extension_6x6, generate_group, s6_signature_check
from symfunc import SixPoint, monic_from_roots_disc, vandermonde_disc
from visualization import plot_hilbert_series
from weierstrass import WeierstrassData, compute_r20, invariants_from_u, r20_closed_form, rewrite_u_to_ts


def main():
    print('Orthogonal modular forms - Demo')

    # RELATION s10^2 = t10^2 - 4 t8 t12
    residual=invariants_from_u(WeierstrassData.generic()).relation_residual()
    print(f'Delta20 identity: {"holds" if residual.is_zero() else "FAILS"}')

    # r20
    r20=compute_r20(WeierstrassData.generic())
    print(f'r20: weighted degree {r20.weighted_degree()}, closed form {"ok" if r20==r20_closed_form() else "differs"}')
    print(f'r20 in t: {rewrite_u_to_ts(r20).to_text()}')

    # HILBERT SERIES
    N=120
    series={}
    for name,p in sorted(PRESENTATIONS.items()):
        rational=hilbert_from_rational(p,N)
        series[name]=rational
        print(f'{name}: series matches counting to order {N}: {series_equal(rational,hilbert_from_counting(p,N))}, a-invariant {a_invariant(p)}')
    print(f'character factor (1+T^4)(1+T^30): {character_factor_check(N)}')

    # GROUP
    closure=generate_group(SYMPLECTIC_GENERATORS)
    print(f'\nSp(4,F2): order {closure.order}, S6 signature {s6_signature_check(closure)}')
    print(f'with eta_2: order {generate_group(extension_6x6()).order}')

    # SIX POINTS
    p=SixPoint(0,1,2,3,4,5)
    print(f'\nVandermonde at 0..5: {vandermonde_disc(p)} (discriminant route: {monic_from_roots_disc(p)})')

    # graph
    plot_hilbert_series(series,save_path='demo_output.png',show=False)
    print('\nGraph saved: demo_output.png')


if __name__=='__main__':
    main()
