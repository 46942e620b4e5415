import numpy as np


def rk4_step(rhs, t, state, h):
    """One classic fourth order Runge-Kutta step.

    Parameters
    ----------
    rhs : callable
        Right-hand side ``rhs(t, state)`` returning an array shaped like
        ``state``.
    t : float
        Current value of the independent variable.
    state : numpy array
        Current state.
    h : float
        Signed step.

    Returns
    -------
    new_state : numpy array
        State at ``t + h``.
    """
    k1 = rhs(t, state)
    k2 = rhs(t + 0.5 * h, state + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, state + 0.5 * h * k2)
    k4 = rhs(t + h, state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def sampled_rk4_step(rhs, state, start, middle, end, h):
    """RK4 step for a system whose coefficients are only known at samples.

    ``rhs(coefficients, state)`` is evaluated with the coefficients sampled
    at the start, the middle and the end of the step, which is what the
    classic scheme needs.
    """
    k1 = rhs(start, state)
    k2 = rhs(middle, state + 0.5 * h * k1)
    k3 = rhs(middle, state + 0.5 * h * k2)
    k4 = rhs(end, state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def march(step, states, start):
    """Fills ``states`` along axis 0 from ``states[start]`` outwards.

    Parameters
    ----------
    step : callable
        ``step(state, index, next_index)`` returns the state at
        ``next_index`` given the state at ``index``.
    states : numpy array
        Array whose entry ``start`` is set; the others are overwritten.
    start : int
        Index of the initial state.

    Returns
    -------
    states : numpy array
    """
    count = states.shape[0]
    for index in range(start, count - 1):
        states[index + 1] = step(states[index], index, index + 1)
    for index in range(start, 0, -1):
        states[index - 1] = step(states[index], index, index - 1)
    return states


def linear_midpoint(first, second):
    return 0.5 * (np.asarray(first) + np.asarray(second))
