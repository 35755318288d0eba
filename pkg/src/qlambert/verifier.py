"""
Randomized exact verification of catalog identities.
"""
import concurrent.futures
import dataclasses
import functools
import itertools
import logging
import random
import time
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from autodict import dictable

from qlambert import dsl
from qlambert.builders import Param
from qlambert.catalog import ComparisonMode, IdentityRecord
from qlambert.errors import QLambertError, SamplingError
from qlambert.numbertheory import sigma, weighted_divisor_sum
from qlambert.qseries import QSeries
from qlambert.scalars import Scalar, format_rational

logger = logging.getLogger(__name__)

MAX_REJECTS = 1000

MAX_DENOMINATOR = 16

PASS, FAIL = 'pass', 'fail'


@dictable
@dataclasses.dataclass
class Failure:
    trial: int
    bindings: Dict[str, str]
    k: Optional[int]
    lhs: str
    rhs: str
    error: Optional[str] = None


@dictable
@dataclasses.dataclass
class VerificationReport:
    identity: str
    status: str
    degree: int
    trials: int
    seed: int
    failures: List[Failure] = dataclasses.field(default_factory=list)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS


def _draw(rng: random.Random) -> Fraction:
    r = rng.randint(1, MAX_DENOMINATOR)
    return Fraction(rng.randint(-(r - 1), r - 1), r)


def sample_params(record: IdentityRecord, seed: int,
                  trial: int) -> Dict[str, Param]:
    """
    Draw bindings ``p/r`` with ``1 <= r <= 16`` and ``|p| < r`` for every
    free parameter, redrawing until all constraints hold.

    :raises SamplingError: after 1000 rejected draws.
    """
    rng = random.Random(f'{seed}/{trial}')
    for _ in range(MAX_REJECTS):
        bindings = {}
        for p in record.params:
            fixed = p.fixed
            bindings[p.name] = fixed if fixed is not None else Param(_draw(rng))
        if all(c.holds(bindings[p.name], bindings)
               for p in record.params for c in p.constraints):
            return bindings
    raise SamplingError(record.id, MAX_REJECTS)


def _subseq_target(mode: ComparisonMode, n: int,
                   bindings: Mapping[str, dsl.Binding]) -> Scalar:
    if mode.target == 'sigma':
        return Fraction(sigma(int(mode.target_arg), n))
    return weighted_divisor_sum(n, bindings[mode.target_arg].c)


def compare(mode: ComparisonMode, lhs: QSeries, rhs: Optional[QSeries],
            bindings: Mapping[str, dsl.Binding]
            ) -> Optional[Tuple[int, Scalar, Scalar]]:
    """
    First mismatch ``(k, left, right)`` under `mode`, or `None`.

    For predicate modes the right value is the expected one.
    """
    degree = lhs.degree if rhs is None else min(lhs.degree, rhs.degree)
    if mode.kind == 'equal':
        for k in range(degree + 1):
            if lhs.coeff(k) != rhs.coeff(k):
                return k, lhs.coeff(k), rhs.coeff(k)
        return None
    if mode.kind == 'even':
        for k in range(0, degree + 1, 2):
            if lhs.coeff(k) != rhs.coeff(k):
                return k, lhs.coeff(k), rhs.coeff(k)
        return None

    sides = [lhs] if rhs is None else [lhs, rhs]
    if mode.kind == 'odd':
        checks = [(k, Fraction(0)) for k in range(0, degree + 1, 2)]
    else:
        stride = dsl.Evaluator(bindings).integer(mode.stride)
        if stride < 1:
            raise ValueError(f'subsequence stride {stride} must be >= 1')
        checks = [(stride * n, _subseq_target(mode, n, bindings))
                  for n in range(1, degree // stride + 1)]
    for side in sides:
        for k, expected in checks:
            if side.coeff(k) != expected:
                return k, side.coeff(k), expected
    return None


def _binding_strings(bindings: Mapping[str, dsl.Binding]) -> Dict[str, str]:
    return {name: str(value) for name, value in bindings.items()}


def _check(record: IdentityRecord, degree: int, trial: int,
           bindings: Mapping[str, dsl.Binding]) -> Optional[Failure]:
    evaluator = dsl.Evaluator(bindings)
    try:
        lhs = evaluator.evaluate(record.lhs, degree)
        rhs = evaluator.evaluate(record.rhs, degree) \
            if record.rhs is not None else None
        mismatch = compare(record.mode, lhs, rhs, bindings)
    except (QLambertError, ZeroDivisionError, ValueError) as e:
        return Failure(trial, _binding_strings(bindings), None, '', '',
                       error=str(e))
    if mismatch is None:
        return None
    k, left, right = mismatch
    return Failure(trial, _binding_strings(bindings), k,
                   format_rational(left), format_rational(right))


def verify(record: IdentityRecord, degree: Optional[int] = None,
           trials: int = 5, seed: int = 0, *,
           timings: bool = False) -> VerificationReport:
    """
    Evaluate both sides of `record` under `trials` sampled bindings and
    compare them exactly.

    Records without sampled parameters are evaluated once. Integer families
    run their whole index range inside every trial.
    """
    degree = degree or record.degree
    if not record.sampled:
        trials = 1
    started = time.perf_counter()
    failures = []
    ranges = [p.values() for p in record.int_params]
    names = [p.name for p in record.int_params]

    for trial in range(trials):
        try:
            params = sample_params(record, seed, trial)
        except SamplingError as e:
            failures.append(Failure(trial, {}, None, '', '', error=str(e)))
            break
        for indices in itertools.product(*ranges):
            bindings: Dict[str, dsl.Binding] = dict(params)
            bindings.update(zip(names, indices))
            failure = _check(record, degree, trial, bindings)
            if failure is not None:
                logger.warning('%s: trial %d fails at q^%s with %s', record.id,
                               trial, failure.k, failure.bindings)
                failures.append(failure)

    millis = int((time.perf_counter() - started) * 1000) if timings else 0
    report = VerificationReport(
        identity=record.id, status=FAIL if failures else PASS, degree=degree,
        trials=trials, seed=seed, failures=failures, millis=millis,
    )
    logger.info('%s: %s at degree %d over %d trial(s)', record.id,
                report.status, degree, trials)
    return report


def verify_all(records: Iterable[IdentityRecord], degree: Optional[int] = None,
               trials: int = 5, seed: int = 0, *, jobs: int = 1,
               timings: bool = False) -> List[VerificationReport]:
    """
    Verify every record; `jobs > 1` fans out to a process pool. Reports are
    sorted by identity.
    """
    run = functools.partial(verify, degree=degree, trials=trials, seed=seed,
                            timings=timings)
    records = list(records)
    if jobs > 1 and len(records) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run, records))
    else:
        reports = [run(r) for r in records]
    return sorted(reports, key=lambda r: r.identity)
