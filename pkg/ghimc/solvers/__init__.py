from .runge_kutta import rk4_step, sampled_rk4_step, march, linear_midpoint


__all__ = ["rk4_step", "sampled_rk4_step", "march", "linear_midpoint"]
