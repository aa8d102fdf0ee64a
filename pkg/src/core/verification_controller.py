"""
Verification Controller for partdist.
Validates command parameters, runs the exact engine or the sampler, and
packages every outcome as a CommandResult for rendering.
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence

from .job_manager import JobManager
from ..partition_distributions.distribution import (
    build_pmf,
    moment_report,
    weighted_covariance_sum,
    verify_fine_identity,
)
from ..partition_distributions.mgf import verify_derivative_recursion_range
from ..partition_distributions.partitions import (
    enumerate_partitions,
    to_multiplicity,
    to_partition_vector,
)
from ..partition_distributions.sampler import chi_square_report, empirical_moments, pmf_z_scores
from ..partition_distributions.serialization import CommandResult
from ..partition_distributions.xmoments import (
    default_samples,
    fit_binomial_basis,
    leading_asymptotics_check,
    scaled_component_sequence,
    scaled_expectation_triangle,
)
from ..utils.env_config import config
from ..utils.validation import ParameterValidator, ValidationResult

logger = logging.getLogger(__name__)


class InvalidParametersError(ValueError):
    """Raised when a command is called with parameters that fail validation."""

    def __init__(self, result: ValidationResult) -> None:
        super().__init__("; ".join(
            f"{e.field}: {e.message}" if e.field else e.message for e in result.errors
        ))
        self.result = result


class VerificationController:
    """
    Controller class that bridges the command line to the computation.
    Every command validates its parameters before computing anything.
    """

    COMMANDS = (
        'enumerate', 'pmf', 'ymoments', 'cov', 'verify-fine', 'verify-mgf',
        'xseq', 'xtable', 'fit', 'asymptotics', 'sample',
    )

    def __init__(self, workers: int = 1) -> None:
        """
        Initialize the controller.

        Args:
            workers: Threads for chunked enumeration and sampling.
        """
        self.workers = workers
        self.job_manager = JobManager()
        self._handlers: Dict[str, Callable[..., CommandResult]] = {
            'enumerate': self.enumerate,
            'pmf': self.pmf,
            'ymoments': self.ymoments,
            'cov': self.covariance,
            'verify-fine': self.verify_fine,
            'verify-mgf': self.verify_mgf,
            'xseq': self.xseq,
            'xtable': self.xtable,
            'fit': self.fit,
            'asymptotics': self.asymptotics,
            'sample': self.sample,
        }
        logger.debug(f"Controller initialized with {workers} worker(s)")

    def set_progress_callback(self, callback: Callable[[float, str], None]) -> None:
        """Set callback for progress updates."""
        self.job_manager.set_progress_callback(callback)

    def validate(self, command: str, params: Dict[str, Any]) -> ValidationResult:
        """
        Validate the parameters of ``command``.

        Args:
            command: One of COMMANDS.
            params: Keyword parameters the command will be called with.

        Returns:
            ValidationResult with all validation checks.
        """
        v = ParameterValidator
        checks: List[ValidationResult] = [v.validate_workers(self.workers)]
        if command not in self._handlers:
            result = ValidationResult()
            result.add_error(f"unknown command {command!r}", "command")
            return result
        if command in ('enumerate', 'pmf'):
            checks.append(v.validate_exact_n(params.get('n'), minimum=0))
        elif command in ('ymoments', 'cov'):
            checks.append(v.validate_exact_n(params.get('n')))
        elif command == 'verify-fine':
            checks.append(v.validate_exact_n(params.get('max_n'), field='max_n', minimum=0))
        elif command in ('verify-mgf', 'xtable'):
            checks.append(v.validate_exact_n(params.get('max_n'), field='max_n'))
        elif command == 'xseq':
            checks.append(v.validate_exact_n(params.get('max_n'), field='max_n'))
            checks.append(v.validate_component(params.get('component'), params.get('max_n')))
        elif command == 'fit':
            j = params.get('j')
            samples = params.get('samples')
            checks.append(v.validate_samples(j, samples))
            if samples is None and isinstance(j, int) and j >= 1:
                checks.append(v.validate_exact_n(4 * j + 1, field='j'))
        elif command == 'asymptotics':
            j = params.get('j')
            checks.append(v.validate_samples(j, None))
            if isinstance(j, int) and j >= 1:
                checks.append(v.validate_exact_n(4 * j + 1, field='j'))
        elif command == 'sample':
            checks.append(v.validate_sampler_n(params.get('n')))
            checks.append(v.validate_trials(params.get('trials')))
            checks.append(v.validate_seed(params.get('seed')))
        return v.combine(checks)

    def execute(self, command: str, **params: Any) -> CommandResult:
        """
        Validate, then run ``command``.

        Raises:
            InvalidParametersError: If validation reports any error.
        """
        result = self.validate(command, params)
        for warning in result.warnings:
            logger.warning(str(warning))
        if not result.is_valid():
            raise InvalidParametersError(result)
        logger.info(f"Running {command} with {params}")
        outcome = self._handlers[command](**params)
        logger.info(f"{command} finished: {'ok' if outcome.ok else 'MISMATCH'}")
        return outcome

    def enumerate(self, n: int) -> CommandResult:
        rows = [(p, to_multiplicity(p), to_partition_vector(p)) for p in enumerate_partitions(n)]
        return CommandResult(
            command='enumerate',
            header=('partition', 'multiplicity_vector', 'partition_vector'),
            rows=rows,
        )

    def pmf(self, n: int) -> CommandResult:
        pmf = build_pmf(n)
        rows = [
            (p, to_multiplicity(p), to_partition_vector(p), probability)
            for p, probability in pmf.entries.items()
        ]
        total = pmf.total()
        return CommandResult(
            command='pmf',
            header=('partition', 'multiplicity_vector', 'partition_vector', 'probability'),
            rows=rows,
            summary={'total': total},
            payload=[
                {
                    'partition': p,
                    'multiplicity_vector': m,
                    'partition_vector': x,
                    'probability': probability,
                }
                for p, m, x, probability in rows
            ],
            ok=total == 1,
        )

    def ymoments(self, n: int, verify: bool = False) -> CommandResult:
        report = moment_report(n, verify=verify, workers=self.workers, job_manager=self.job_manager)
        rows = [
            (i, report.expectation[i - 1], report.second_moment[i - 1])
            for i in range(1, n + 1)
        ]
        return CommandResult(
            command='ymoments',
            header=('i', 'expectation', 'second_moment_row'),
            rows=rows,
            summary=self._verification_summary(report),
            payload={
                'n': n,
                'expectation': report.expectation,
                'a_matrix': report.a_matrix,
                'b_matrix': report.b_matrix,
                'second_moment': report.second_moment,
                **self._verification_summary(report),
            },
            ok=report.ok,
        )

    def covariance(self, n: int, verify: bool = False) -> CommandResult:
        report = moment_report(n, verify=verify, workers=self.workers, job_manager=self.job_manager)
        weighted = weighted_covariance_sum(report.covariance)
        summary = {'weighted_sum': weighted, **self._verification_summary(report)}
        return CommandResult(
            command='cov',
            header=('i', 'covariance_row'),
            rows=[(i, row) for i, row in enumerate(report.covariance, start=1)],
            summary=summary,
            payload={'n': n, 'covariance': report.covariance, **summary},
            ok=report.ok and weighted == 0,
        )

    @staticmethod
    def _verification_summary(report) -> Dict[str, Any]:
        if not report.verified:
            return {}
        return {
            'verified': True,
            'mismatches': [
                f"{m.quantity}[{m.row}{'' if m.column is None else f',{m.column}'}]: "
                f"closed form {m.closed_form} != oracle {m.oracle}"
                for m in report.mismatches
            ],
        }

    def verify_fine(self, max_n: int) -> CommandResult:
        results = [verify_fine_identity(n) for n in range(0, max_n + 1)]
        return CommandResult(
            command='verify-fine',
            header=('n', 'partitions', 'sum', 'holds'),
            rows=[(r.n, r.terms, r.total, r.holds) for r in results],
            ok=all(r.holds for r in results),
        )

    def verify_mgf(self, max_n: int) -> CommandResult:
        verdicts = verify_derivative_recursion_range(max_n, workers=self.workers, job_manager=self.job_manager)
        return CommandResult(
            command='verify-mgf',
            header=('n', 'i', 'derivative_terms', 'recursion_terms', 'ok', 'mismatches'),
            rows=[(v.n, v.i, len(v.left), len(v.right), v.ok, len(v.mismatches)) for v in verdicts],
            summary={
                'mismatching_terms': [
                    f"n={v.n}, i={v.i}, exponent {m.exponent}: derivative {m.left} != recursion {m.right}"
                    for v in verdicts for m in v.mismatches
                ],
            } if not all(v.ok for v in verdicts) else {},
            payload=[
                {
                    'n': v.n,
                    'i': v.i,
                    'ok': v.ok,
                    'mismatches': [
                        {'exponent': list(m.exponent), 'left': m.left, 'right': m.right}
                        for m in v.mismatches
                    ],
                }
                for v in verdicts
            ],
            ok=all(v.ok for v in verdicts),
        )

    def xseq(self, component: int, max_n: int, from_end: bool = False) -> CommandResult:
        rows = scaled_component_sequence(component, max_n, from_end=from_end, workers=self.workers)
        return CommandResult(
            command='xseq',
            header=('n', 'component', 'scaled_value', 'conjecture_value', 'match', 'provenance'),
            rows=[
                (
                    r.n, r.component, r.scaled, r.conjecture, r.match,
                    r.provenance if r.in_conjectured_range or not from_end
                    else f"{r.provenance}; outside conjectured range",
                )
                for r in rows
            ],
            ok=all(r.match is not False for r in rows),
        )

    def xtable(self, max_n: int) -> CommandResult:
        return CommandResult(
            command='xtable',
            header=('n', 'scaled_expectations'),
            rows=[(n, row) for n, row in enumerate(scaled_expectation_triangle(max_n), start=1)],
        )

    def fit(self, j: int, samples: Optional[Sequence[int]] = None) -> CommandResult:
        fit = fit_binomial_basis(j, samples or default_samples(j))
        claims = {
            claim.name: {
                'index': claim.index,
                'expected': claim.expected,
                'actual': claim.actual,
                'matches': claim.matches,
            }
            for claim in fit.claims
        }
        return CommandResult(
            command='fit',
            header=('i', 'a_i'),
            rows=[(i, a) for i, a in fit.coefficients.items()],
            summary={
                'sample_range': fit.sample_range,
                'all_positive_integers': fit.all_positive_integers,
                'holdouts_ok': fit.holdouts_ok,
                'claims_ok': fit.claims_ok,
            },
            payload={
                'j': j,
                'sample_range': list(fit.sample_range),
                'coefficients': {str(i): a for i, a in fit.coefficients.items()},
                'all_positive_integers': fit.all_positive_integers,
                'claims': claims,
                'holdout': [
                    {'n': h.n, 'predicted': h.predicted, 'actual': h.actual, 'matches': h.matches}
                    for h in fit.holdouts
                ],
            },
            ok=fit.ok,
        )

    def asymptotics(self, j: int) -> CommandResult:
        report = leading_asymptotics_check(j)
        checks = {
            'degree': report.degree,
            'degree_ok': report.degree_ok,
            'leading': report.leading,
            'expected_leading': report.expected_leading,
            'leading_ok': report.leading_ok,
            'next_coefficient': report.next_coefficient,
            'printed_next': report.printed_next,
            'next_matches_printed': report.next_matches_printed,
            'next_matches_sign_corrected': report.next_matches_sign_corrected,
            'matches_printed_polynomial': report.matches_printed_polynomial,
        }
        return CommandResult(
            command='asymptotics',
            header=('power', 'coefficient'),
            rows=[(k, c) for k, c in enumerate(report.polynomial) if c != 0],
            summary=checks,
            payload={'j': j, 'polynomial': list(report.polynomial), **checks},
            ok=report.ok,
        )

    def sample(self, n: int, trials: int, seed: int) -> CommandResult:
        exact_max_n = config.exact_max_n()
        run = empirical_moments(
            n, trials, seed,
            workers=self.workers, exact_x_max_n=exact_max_n, job_manager=self.job_manager,
        )
        chi_square = chi_square_report(run, exact_max_n=exact_max_n)
        z_scores = pmf_z_scores(run) if n <= exact_max_n else []
        payload = run.to_dict()
        payload['z_scores'] = [
            {'partition': s.partition, 'exact': s.exact, 'count': s.count, 'frequency': s.frequency, 'z': s.z}
            for s in z_scores
        ]
        payload['chi_square'] = chi_square.to_dict()
        payload['moments_within_threshold'] = run.moments_ok
        return CommandResult(
            command='sample',
            header=('partition', 'count', 'frequency', 'exact', 'z'),
            rows=[(s.partition, s.count, s.frequency, s.exact, s.z) for s in z_scores]
            or [(p, c, c / trials, None, None) for p, c in run.sorted_pmf()],
            summary={
                'n': n,
                'trials': trials,
                'seed': seed,
                'moments_within_threshold': run.moments_ok,
                'chi_square_status': chi_square.status,
                'chi_square_statistic': chi_square.statistic,
                'chi_square_dof': chi_square.dof,
                'chi_square_quantile': chi_square.quantile,
                'chi_square_passed': chi_square.passed,
            },
            payload=payload,
        )
