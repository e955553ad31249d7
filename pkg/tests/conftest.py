from hypothesis import HealthCheck, settings

# One deterministic profile for the whole suite: bounded example counts keep
# the eigensolver-heavy properties quick, and derandomization keeps CI runs
# reproducible run-to-run.
settings.register_profile(
    "suite",
    max_examples=40,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
