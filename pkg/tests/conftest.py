from hypothesis import settings

# the suites run alongside heavy oracle computations; wall-clock deadlines
# would only add noise
settings.register_profile("coverhom", deadline=None)
settings.load_profile("coverhom")
