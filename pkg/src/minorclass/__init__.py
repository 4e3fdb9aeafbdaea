"""Minor-closed labelled graph classes: series, distributions, asymptotics, sampling."""

__version__ = "0.1.0"
