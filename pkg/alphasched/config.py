"""
Configuration module for alphasched.
"""

from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverConfig(BaseSettings):
    """Configuration for the solver pipeline, the generator and the bench harness."""
    # Cutting planes and simplex
    tol_sep: float = 1e-7
    lp_tolerance: float = 1e-8
    pivot_tolerance: float = 1e-11
    degenerate_streak: int = 50
    round_limit_factor: int = 10

    # Exhaustive oracles
    exact_n_limit: int = 10
    separation_n_limit: int = 12

    # Random instances
    p_max: int = 10
    r_max: int = 20
    w_max: int = 10
    edge_prob: float = 0.2
    zero_length_prob: float = 0.05

    # Bench harness
    bench_exact: bool = True

    # Logging
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="ALPHASCHED_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def simplex_options(self) -> dict:
        return {
            "tol": self.lp_tolerance,
            "pivot_tol": self.pivot_tolerance,
            "degenerate_streak": self.degenerate_streak,
        }


def create_config(config_file: Optional[str] = None) -> SolverConfig:
    """Create a configuration instance with optional custom config file."""
    if config_file:
        return SolverConfig(_env_file=config_file)
    return SolverConfig()


# Global configuration instance
config = SolverConfig()
