"""
Application Errors

The core hierarchy lives in octo.exceptions; the application layer adds the
scenario error raised while parsing and validating suite configurations.
"""

from octo.exceptions import OctoGaussError


class ScenarioError(OctoGaussError, ValueError):
    """Unknown suite or chart, or invalid scenario parameters"""
