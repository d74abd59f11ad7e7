class ResourceCapExceeded(RuntimeError):
    """A requested computation is larger than the configured cap."""
