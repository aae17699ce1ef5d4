"""modlab: exhaustive classification of prime-like submodules of finite modules
over finite commutative rings, with a machine-checked theorem suite."""

__version__ = "0.1.0"
