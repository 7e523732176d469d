"""Identity registry, sampler and report runner behind the ``verify`` command."""
