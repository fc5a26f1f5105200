"""
Engine that runs the configured checks against measured quantities
"""
import logging
from typing import Dict, List, Optional

from volterraheat.checks import Check, CheckContext, CheckResult, get_all_checks
from volterraheat.config import Settings

logger = logging.getLogger(__name__)


class Verifier:
    """
    Loads enabled checks from the settings and judges report measurements
    """

    def __init__(self, settings: Optional[Settings] = None):
        """
        Initialize the verifier

        Args:
            settings: Run settings (defaults when omitted)
        """
        self.settings = settings or Settings.create_default()
        self._checks: Dict[str, Check] = {}
        self._load_checks()

    def _load_checks(self) -> None:
        """
        Instantiate every enabled check with its option overrides
        """
        for check_cls in get_all_checks():
            if check_cls.id in self.settings.disabled_checks:
                continue
            self._checks[check_cls.id] = check_cls(config=self.settings.check_configs.get(check_cls.id, {}))

    def get_available_checks(self, category: Optional[str] = None) -> List[Check]:
        """
        Get the loaded checks

        Args:
            category: Only checks of this category when given

        Returns:
            List of check instances in registry order
        """
        return [c for c in self._checks.values() if category is None or c.category == category]

    def get_check(self, check_id: str) -> Optional[Check]:
        """
        Get a specific check by ID

        Args:
            check_id: ID of the check

        Returns:
            Check instance or None if not loaded
        """
        return self._checks.get(check_id)

    def run(self, category: str, context: CheckContext) -> List[CheckResult]:
        """
        Run every loaded check of a category that applies to the context

        Args:
            category: Check category, "equivalence" or "dependence"
            context: Measurements and run parameters

        Returns:
            Ordered list of results
        """
        results = []
        for check in self.get_available_checks(category):
            if not check.applies_to(context):
                continue
            result = check.check(context)
            if result.passed:
                logger.debug("%s", result.message)
            else:
                logger.warning("Check %s failed: %s", check.id, result.message)
            results.append(result)
        return results

    @staticmethod
    def tolerances(results: List[CheckResult]) -> Dict[str, float]:
        """
        Bounds used by a list of results, keyed by check ID

        Args:
            results: Check results

        Returns:
            Mapping check ID -> bound
        """
        return {r.check_id: r.bound for r in results}

    @staticmethod
    def passed(results: List[CheckResult]) -> bool:
        """
        Whether no error-severity check failed

        Args:
            results: Check results

        Returns:
            Overall verdict
        """
        return all(r.passed for r in results if r.severity == "error")
