"""HTTP service wrapping the simulation runner."""
