"""bsct-lab: bond-scan smoothness benchmarking for interatomic potentials.

The package builds 1-D bond-deformation scans of molecular structures,
evaluates potentials along them, scores smoothness with the force
smoothness deviation (FSD) metric, and cross-checks the metric against
molecular-dynamics stability using a small differentiable attention-based
toy potential.
"""

__version__ = "0.1.0"
