import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=int(os.environ.get("MSPACINGS_HYPOTHESIS_EXAMPLES", "50")),
)
settings.load_profile("suite")
