"""Numerical defaults for the Fock-matrix oracle and verification runs."""

from dataclasses import dataclass


@dataclass(frozen=True)
class OracleDefaults:
    n_max: int = 200
    n_max_near_boundary: int = 2000
    # coupling ratios 2|B|/A above this use the near-boundary truncation
    near_boundary_ratio: float = 0.9
    truncation_tol: float = 1e-10
    max_iter: int = 50

    def n_max_for(self, coupling_ratio: float) -> int:
        if coupling_ratio <= self.near_boundary_ratio:
            return self.n_max
        return self.n_max_near_boundary


DEFAULTS = OracleDefaults()
