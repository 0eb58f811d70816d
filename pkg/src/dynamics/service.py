import numpy as np

from src.dynamics import constants, exceptions
from src.dynamics.schemas import LorenzParameters, ObservationModel

CANONICAL = LorenzParameters()


def _check_state(state) -> np.ndarray:
    state = np.asarray(state, dtype=float)
    if state.ndim not in (1, 2) or state.shape[0] != constants.STATE_DIMENSION:
        raise exceptions.StateDimensionMismatch(f"Got shape {state.shape}.")
    return state


def lorenz63_rhs(
    state,
    sigma: float = constants.SIGMA,
    rho: float = constants.RHO,
    beta: float = constants.BETA,
) -> np.ndarray:
    """Lorenz '63 vector field.

    `state` is either a single 3-vector or a 3×K matrix whose columns are
    evaluated independently.
    """
    state = _check_state(state)
    x, y, z = state[0], state[1], state[2]
    return np.stack([sigma * (y - x), x * (rho - z) - y, x * y - beta * z])


def rk4_step(state, dt: float, params: LorenzParameters = CANONICAL) -> np.ndarray:
    if dt < 0:
        raise exceptions.NegativeTimeStep(f"Got dt={dt}.")
    state = _check_state(state)
    if dt == 0:
        return state.copy()

    def f(x):
        return lorenz63_rhs(x, params.sigma, params.rho, params.beta)

    k1 = f(state)
    k2 = f(state + 0.5 * dt * k1)
    k3 = f(state + 0.5 * dt * k2)
    k4 = f(state + dt * k3)
    return state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def propagate(
    state,
    interval: float,
    substeps: int = constants.SUBSTEPS,
    params: LorenzParameters = CANONICAL,
) -> np.ndarray:
    if substeps < 1:
        raise exceptions.InvalidSubsteps(f"Got substeps={substeps}.")
    if interval < 0:
        raise exceptions.NegativeTimeStep(f"Got interval={interval}.")
    dt = interval / substeps
    state = _check_state(state).copy()
    for _ in range(substeps):
        state = rk4_step(state, dt, params)
    return state


def spinup_state(
    initial=constants.INITIAL_STATE,
    time: float = constants.SPINUP_TIME,
    dt_obs: float = constants.DT_OBS,
    substeps: int = constants.SUBSTEPS,
) -> np.ndarray:
    """Integrate `initial` forward `time` units in windows of `dt_obs`, landing on the attractor."""
    windows = int(round(time / dt_obs))
    state = _check_state(initial).copy()
    for _ in range(windows):
        state = propagate(state, dt_obs, substeps)
    return state


def truth_trajectory(
    initial, windows: int, dt_obs: float = constants.DT_OBS, substeps: int = constants.SUBSTEPS
) -> np.ndarray:
    """Return a (windows+1)×3 array; row 0 is `initial`, row t is the state after t windows."""
    state = _check_state(initial).copy()
    trajectory = np.empty((windows + 1, constants.STATE_DIMENSION))
    trajectory[0] = state
    for t in range(1, windows + 1):
        state = propagate(state, dt_obs, substeps)
        trajectory[t] = state
    return trajectory


def observe(state, model: ObservationModel, noise_draw: float) -> float:
    state = np.asarray(state, dtype=float)
    if model.observed_index >= state.shape[0]:
        raise exceptions.ObservedIndexOutOfRange(
            f"Index {model.observed_index} for dimension {state.shape[0]}."
        )
    return float(state[model.observed_index] + np.sqrt(model.noise_variance) * noise_draw)


def observation_operator(states: np.ndarray, model: ObservationModel) -> np.ndarray:
    """Hx for every column of `states`."""
    states = np.asarray(states, dtype=float)
    if model.observed_index >= states.shape[0]:
        raise exceptions.ObservedIndexOutOfRange(
            f"Index {model.observed_index} for dimension {states.shape[0]}."
        )
    return states[model.observed_index]
