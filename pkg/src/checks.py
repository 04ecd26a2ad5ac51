'''
Verification suites
Each check is a function of the run context returning a CheckResult;
suites run in a bounded thread pool and are reported by check name
'''

import hashlib
import json
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np
from sympy import QQ

import graded_ring
import group_f2
import symfunc
from cache import ArtifactCache
from config import REPORT_SCHEMA, SPECIALIZATION_POINTS, TOOL_VERSION, Settings
from elimination import cofactor_det
from irreducibility import certify_irreducible, is_squarefree_on_line, replay_certificate
from weierstrass import (T_SPACE, U_SPACE, PipelineArtifacts, WeierstrassData, action_weight, cofactors,
                         compute_h, compute_r20, invariants_from_u, is_valid_parameter, numeric_k120,
                         r20_closed_form, r20_matrix, rewrite_u_to_ts, run_pipeline, sigma1_swap, ts_to_u)

logger = logging.getLogger(__name__)

PASS, FAIL, INCONCLUSIVE = 'pass', 'fail', 'inconclusive'


@dataclass
class CheckResult:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    artifacts: Dict[str, str] = field(default_factory=dict)
    certificate: Optional[dict] = None
    wall_time: Optional[float] = None

    def to_dict(self, timings: bool = False) -> dict:
        out = {'name': self.name, 'status': self.status, 'detail': self.detail,
               'artifacts': self.artifacts, 'certificate': self.certificate}
        if timings and self.wall_time is not None:
            out['wall_time'] = round(self.wall_time, 3)
        return out


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


class RunContext:
    '''Settings, cache and the pipeline artifacts, computed once and shared between checks'''

    def __init__(self, settings: Settings):
        self.settings = settings
        self.cache = ArtifactCache(settings.cache_dir, enabled=settings.use_cache)
        self._lock = threading.Lock()
        self._artifacts: Optional[PipelineArtifacts] = None
        self._error: Optional[Exception] = None

    def rng(self, name: str) -> np.random.Generator:
        '''Per-check generator: depends on the seed and the check name only'''
        digest = int(hashlib.sha256(name.encode('utf-8')).hexdigest()[:8], 16)
        return np.random.default_rng([self.settings.seed, digest])

    def artifacts(self) -> PipelineArtifacts:
        with self._lock:
            if self._error is not None:
                raise self._error
            if self._artifacts is None:
                try:
                    self._artifacts = self._compute_artifacts()
                except Exception as exc:
                    self._error = exc
                    raise
            return self._artifacts

    def _compute_artifacts(self) -> PipelineArtifacts:
        k120 = self.cache.load('k120', U_SPACE)
        artifacts = run_pipeline(k120)
        if k120 is None:
            self.cache.store('k120', artifacts.k120)
        cached = self.cache.load('delta60', T_SPACE, flags='primitive')
        if cached is None:
            self.cache.store('delta60', artifacts.delta60, flags='primitive')
        elif cached != artifacts.delta60:
            raise ValueError('Cached Delta60 differs from the recomputed one')
        return artifacts


Check = Callable[[RunContext], CheckResult]
SUITES: Dict[str, Dict[str, Check]] = {'pipeline': {}, 'rings': {}, 'group': {}, 'symfunc': {}}


def check(suite: str, name: str):
    def register(fn: Check) -> Check:
        SUITES[suite][f'{suite}.{name}'] = fn
        return fn
    return register


def _random_valid_u(rng: np.random.Generator, box: int = 20) -> WeierstrassData:
    '''Valid point whose sextic h keeps degree 6 in x (leading coefficient 4 u53^3)'''
    while True:
        u = WeierstrassData.numeric(int(v) for v in rng.integers(-box, box + 1, size=6))
        if is_valid_parameter(u) and u.u_53 != 0:
            return u


# --- pipeline ---

@check('pipeline', 'delta20_identity')
def check_delta20_identity(ctx: RunContext) -> CheckResult:
    residual = invariants_from_u(WeierstrassData.generic()).relation_residual()
    return CheckResult('pipeline.delta20_identity', _status(residual.is_zero()),
                       {'residual_terms': len(residual)})


@check('pipeline', 'h_division')
def check_h_division(ctx: RunContext) -> CheckResult:
    u = WeierstrassData.generic()
    h = compute_h(u)
    a, b = cofactors(u)
    x, w = h.space.gen('x'), h.space.gen('w')
    expected = 4 * a ** 3 + 27 * x * w * b ** 2
    xw_degrees = {m[6] + m[7] for m in h.monomials()}
    ok = h == expected and xw_degrees == {6} and action_weight(h, 'lambda') == 12
    return CheckResult('pipeline.h_division', _status(ok),
                       {'terms': len(h), 'xw_degrees': sorted(xw_degrees)},
                       {'h': h.content_hash()})


@check('pipeline', 'r20_closed_form')
def check_r20_closed_form(ctx: RunContext) -> CheckResult:
    u = WeierstrassData.generic()
    r20 = compute_r20(u)
    oracle = cofactor_det(r20_matrix(u)).embed(U_SPACE)
    closed = r20_closed_form()
    in_t = rewrite_u_to_ts(r20)
    t = {name: in_t.space.gen(name) for name in in_t.space.names}
    expected_t = (t['t_10'] ** 2 - 4 * t['t_8'] * t['t_12'] - t['t_4'] * t['t_6'] * t['t_10']
                  + t['t_6'] ** 2 * t['t_8'] + t['t_4'] ** 2 * t['t_12'])
    ok = r20 == oracle == closed and r20.weighted_degree() == 20 and in_t == expected_t
    return CheckResult('pipeline.r20_closed_form', _status(ok),
                       {'weighted_degree': r20.weighted_degree(), 'terms': len(r20)},
                       {'r20': r20.content_hash()})


@check('pipeline', 'k120_degree')
def check_k120_degree(ctx: RunContext) -> CheckResult:
    k120 = ctx.artifacts().k120
    degree = k120.weighted_degree()
    mu = action_weight(k120, 'mu')
    swap_invariant = sigma1_swap(k120) == k120
    s10_degree = rewrite_u_to_ts(k120).degree('s_10')
    ok = degree == 120 and mu == 0 and swap_invariant and s10_degree == 0
    return CheckResult('pipeline.k120_degree', _status(ok),
                       {'weighted_degree': degree, 'mu_weight': mu, 'swap_invariant': swap_invariant,
                        's10_degree_in_t': s10_degree, 'terms': len(k120)},
                       {'k120': k120.content_hash()})


@check('pipeline', 'k120_specialization')
def check_k120_specialization(ctx: RunContext) -> CheckResult:
    k120 = ctx.artifacts().k120
    rng = ctx.rng('pipeline.k120_specialization')
    for _ in range(SPECIALIZATION_POINTS):
        u = _random_valid_u(rng)
        symbolic = k120.evaluate(u.point())
        numeric = numeric_k120(u)
        if symbolic != numeric:
            return CheckResult('pipeline.k120_specialization', FAIL,
                               {'point': [str(v) for v in u.values()],
                                'symbolic': str(symbolic), 'numeric': str(numeric)})
    return CheckResult('pipeline.k120_specialization', PASS, {'points': SPECIALIZATION_POINTS})


@check('pipeline', 'delta60_divisibility')
def check_delta60_divisibility(ctx: RunContext) -> CheckResult:
    art = ctx.artifacts()
    product_ok = art.r20 ** 3 * art.quotient_u == art.k120
    round_trip = ts_to_u(rewrite_u_to_ts(art.quotient_u)) == art.quotient_u
    republished = art.delta60.scale(art.delta60_scale)
    in_t = art.factorization_in_t()
    ok = (product_ok and round_trip and art.delta60.weighted_degree() == 60
          and art.delta60.is_primitive() and ts_to_u(republished) == art.quotient_u
          and in_t['identity'] and in_t['k120_s10_degree'] == 0)
    return CheckResult('pipeline.delta60_divisibility', _status(ok),
                       {'weighted_degree': art.delta60.weighted_degree(), 'terms': len(art.delta60),
                        'scale': str(art.delta60_scale), 'round_trip': round_trip,
                        'identity_in_t': in_t['identity']},
                       {'delta60': art.delta60.content_hash(), 'k120': art.k120.content_hash()})


@check('pipeline', 'delta60_irreducible')
def check_delta60_irreducible(ctx: RunContext) -> CheckResult:
    delta60 = ctx.artifacts().delta60
    s = ctx.settings
    cert = certify_irreducible(delta60, attempts=s.attempts, seed=s.seed, primes=s.primes)
    if not cert.is_positive:
        return CheckResult('pipeline.delta60_irreducible', INCONCLUSIVE, {'attempts': s.attempts},
                           {'delta60': delta60.content_hash()}, cert.to_dict())
    replayed = replay_certificate(delta60, cert)
    return CheckResult('pipeline.delta60_irreducible', _status(replayed), {'replayed': replayed},
                       {'delta60': delta60.content_hash()}, cert.to_dict())


@check('pipeline', 'delta60_not_square')
def check_delta60_not_square(ctx: RunContext) -> CheckResult:
    ok = is_squarefree_on_line(ctx.artifacts().delta60, seed=ctx.settings.seed)
    return CheckResult('pipeline.delta60_not_square', _status(ok))


@check('pipeline', 'delta88_degree')
def check_delta88_degree(ctx: RunContext) -> CheckResult:
    delta88 = ctx.artifacts().delta88()
    return CheckResult('pipeline.delta88_degree', _status(delta88.weighted_degree() == 88),
                       {'weighted_degree': delta88.weighted_degree()})


@check('pipeline', 'boundary_vanishing')
def check_boundary_vanishing(ctx: RunContext) -> CheckResult:
    '''t8, t10, t12, s10 vanish on both components of the excluded locus'''
    rng = ctx.rng('pipeline.boundary_vanishing')
    for zeroed in (('u_35', 'u_57'), ('u_53', 'u_75')):
        values = {name: QQ(int(v)) for name, v in zip(U_SPACE.names, rng.integers(-20, 21, size=6))}
        values.update({name: QQ(0) for name in zeroed})
        u = WeierstrassData.numeric(values[name] for name in U_SPACE.names)
        inv = invariants_from_u(u)
        if is_valid_parameter(u) or any((inv.t_8, inv.t_10, inv.t_12, inv.s_10)):
            return CheckResult('pipeline.boundary_vanishing', FAIL,
                               {'point': [str(v) for v in u.values()]})
    return CheckResult('pipeline.boundary_vanishing', PASS)


# --- rings ---

def _hilbert_check(presentation: graded_ring.WeightedPresentation, N: int) -> CheckResult:
    report = graded_ring.series_report(presentation, N)
    detail = {'truncation': N, 'first_difference': report['first_difference'],
              'generators': report['presentation']['generators'],
              'relations': report['presentation']['relations']}
    return CheckResult(f'rings.hilbert_{presentation.name}', _status(report['match']), detail)


@check('rings', 'hilbert_characters')
def check_hilbert_characters(ctx: RunContext) -> CheckResult:
    return _hilbert_check(graded_ring.WITH_CHARACTERS, ctx.settings.truncation)


@check('rings', 'hilbert_gamma1')
def check_hilbert_gamma1(ctx: RunContext) -> CheckResult:
    return _hilbert_check(graded_ring.GAMMA1, ctx.settings.truncation)


@check('rings', 'hilbert_vinberg')
def check_hilbert_vinberg(ctx: RunContext) -> CheckResult:
    return _hilbert_check(graded_ring.VINBERG, ctx.settings.truncation)


@check('rings', 'character_factor')
def check_character_factor(ctx: RunContext) -> CheckResult:
    N = ctx.settings.truncation
    return CheckResult('rings.character_factor', _status(graded_ring.character_factor_check(N)),
                       {'truncation': N, 'factors': [4, 30]})


@check('rings', 'canonical_twist')
def check_canonical_twist(ctx: RunContext) -> CheckResult:
    twist = graded_ring.canonical_twist(graded_ring.WITH_CHARACTERS)
    return CheckResult('rings.canonical_twist', _status(twist == 4), {'a_invariant': twist})


# --- group ---

@check('group', 'form_audit')
def check_form_audit(ctx: RunContext) -> CheckResult:
    '''Literal generators are reported; the corrected set must preserve U + U'''
    displayed = group_f2.audit_generators(group_f2.DISPLAYED_GENERATORS)
    corrected = group_f2.audit_generators(group_f2.SYMPLECTIC_GENERATORS)
    ok = all(entry['preserves_form'] for entry in corrected)
    return CheckResult('group.form_audit', _status(ok),
                       {'displayed': displayed,
                        'replaced_index': 2,
                        'replacement': group_f2.MIXING_TRANSVECTION.to_rows()})


@check('group', 's6_signature')
def check_s6_signature(ctx: RunContext) -> CheckResult:
    closure = group_f2.generate_group(group_f2.SYMPLECTIC_GENERATORS)
    in_form = all(group_f2.preserves_form(M, group_f2.GRAM) for M in closure.elements)
    ok = group_f2.s6_signature_check(closure) and in_form
    detail = closure.report()
    # order and element orders only, not an isomorphism proof
    detail['identification'] = 'order-and-histogram'
    return CheckResult('group.s6_signature', _status(ok), detail)


@check('group', 'extension_1440')
def check_extension(ctx: RunContext) -> CheckResult:
    gens = group_f2.extension_6x6()
    closure = group_f2.generate_group(gens)
    central = group_f2.is_central(group_f2.TAU, gens)
    ok = closure.order == 1440 and central and closure.contains(group_f2.TAU)
    detail = closure.report()
    detail['tau_central'] = central
    return CheckResult('group.extension_1440', _status(ok), detail)


@check('group', 'displayed_closure')
def check_displayed_closure(ctx: RunContext) -> CheckResult:
    '''The literal generator set closes to GL(4, F2); recorded as part of the audit'''
    closure = group_f2.generate_group(group_f2.DISPLAYED_GENERATORS)
    return CheckResult('group.displayed_closure', _status(closure.order == 20160),
                       {'order': closure.order})


# --- symfunc ---

@check('symfunc', 'vandermonde_cross_check')
def check_vandermonde(ctx: RunContext) -> CheckResult:
    base = symfunc.SixPoint(0, 1, 2, 3, 4, 5)
    if not symfunc.vandermonde_disc(base) == symfunc.monic_from_roots_disc(base) == 34560 ** 2:
        return CheckResult('symfunc.vandermonde_cross_check', FAIL, {'point': '0..5'})
    rng = ctx.rng('symfunc.vandermonde_cross_check')
    for _ in range(20):
        p = symfunc.random_point(rng)
        left, right = symfunc.vandermonde_disc(p), symfunc.monic_from_roots_disc(p)
        if left != right:
            return CheckResult('symfunc.vandermonde_cross_check', FAIL,
                               {'point': [str(c) for c in p], 'vandermonde': str(left),
                                'discriminant': str(right)})
    return CheckResult('symfunc.vandermonde_cross_check', PASS, {'points': 21})


@check('symfunc', 'symbolic_identity')
def check_symbolic_identity(ctx: RunContext) -> CheckResult:
    results = {n: symfunc.symbolic_discriminant_identity(n) for n in (2, 3, 4)}
    return CheckResult('symfunc.symbolic_identity', _status(all(results.values())),
                       {'degrees': {str(n): ok for n, ok in results.items()}})


@check('symfunc', 'igusa_examples')
def check_igusa(ctx: RunContext) -> CheckResult:
    ok = (symfunc.igusa_member((1, 1, -1, -1, 0, 0)) and not symfunc.igusa_member((1, -1, 0, 0, 0, 0))
          and symfunc.igusa_member((0,) * 6))
    return CheckResult('symfunc.igusa_examples', _status(ok))


@check('symfunc', 'newton_identity')
def check_newton(ctx: RunContext) -> CheckResult:
    rng = ctx.rng('symfunc.newton_identity')
    for _ in range(20):
        p = symfunc.random_point(rng)
        e1, e2 = symfunc.elementary_symmetric(p, 1), symfunc.elementary_symmetric(p, 2)
        if symfunc.power_sum(p, 2) != e1 * symfunc.power_sum(p, 1) - 2 * e2:
            return CheckResult('symfunc.newton_identity', FAIL, {'point': [str(c) for c in p]})
    return CheckResult('symfunc.newton_identity', PASS)


# --- runner ---

def selected_checks(suite: str) -> Dict[str, Check]:
    if suite == 'all':
        return {name: fn for checks in SUITES.values() for name, fn in checks.items()}
    if suite not in SUITES:
        raise ValueError(f'Unknown suite {suite!r}')
    return dict(SUITES[suite])


def _run_one(ctx: RunContext, name: str, fn: Check) -> CheckResult:
    started = time.perf_counter()
    try:
        result = fn(ctx)
    except Exception as exc:
        logger.exception('Check %s raised', name)
        result = CheckResult(name, FAIL, {'error': type(exc).__name__, 'message': str(exc)})
    result.name = name
    result.wall_time = time.perf_counter() - started
    logger.info('%s: %s', name, result.status)
    return result


def run_suite(suite: str, settings: Settings) -> List[CheckResult]:
    '''Runs the checks of a suite; results ordered by check name'''
    ctx = RunContext(settings)
    checks = selected_checks(suite)
    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        futures = {name: pool.submit(_run_one, ctx, name, fn) for name, fn in checks.items()}
        results = [futures[name].result() for name in sorted(futures)]
    return results


def build_report(suite: str, settings: Settings, results: List[CheckResult]) -> dict:
    counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    for r in results:
        counts[r.status] += 1
    return {
        'schema': REPORT_SCHEMA,
        'tool_version': TOOL_VERSION,
        'suite': suite,
        'seed': settings.seed,
        'flags': {'attempts': settings.attempts, 'truncation': settings.truncation},
        'checks': [r.to_dict(settings.timings) for r in results],
        'summary': counts,
    }


def report_passed(results: List[CheckResult], allow_inconclusive: bool = False) -> bool:
    allowed = {PASS, INCONCLUSIVE} if allow_inconclusive else {PASS}
    return all(r.status in allowed for r in results)


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
