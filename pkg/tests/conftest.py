from hypothesis import HealthCheck, settings

# exact arithmetic makes individual examples slow but deterministic; the
# wall-clock deadline only adds flakiness here
settings.register_profile(
    "exact",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")
