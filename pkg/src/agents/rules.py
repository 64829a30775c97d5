"""
Trader Behavioral Rules

Pure functions over explicit numpy Generator handles. Every sampling
function accepts an optional `size` and then returns an array, so the engine
can draw for all active traders of one kind in a single call.

Sign convention: positive demand buys, negative demand sells.
"""

from typing import Optional, Sequence, Union

import numpy as np
from scipy import special, stats

from ..lob.orders import LimitOrder, Side
from ..models.errors import InvalidParametersError


FloatOrArray = Union[float, np.ndarray]


def sample_truncated_exponential(
    rng: np.random.Generator,
    theta: float,
    theta_min: float,
    theta_max: float,
    size: Optional[int] = None,
) -> FloatOrArray:
    """
    Draw from an exponential with mean `theta` restricted to [theta_min, theta_max]

    By memorylessness this is theta_min plus an exponential truncated at
    theta_max - theta_min, which is scipy's truncexpon.
    """
    if theta_max < theta_min:
        raise InvalidParametersError(
            "theta_max", f"must be >= theta_min ({theta_max} < {theta_min})"
        )
    if theta_max == theta_min:
        return theta_min if size is None else np.full(size, float(theta_min))
    return stats.truncexpon.rvs(
        b=(theta_max - theta_min) / theta,
        loc=theta_min,
        scale=theta,
        size=size,
        random_state=rng,
    )


def sample_lf_frequency(
    rng: np.random.Generator,
    theta: float,
    theta_min: float,
    theta_max: float,
    size: Optional[int] = None,
) -> Union[int, np.ndarray]:
    """LF trading frequency: truncated exponential rounded to whole sessions"""
    draws = sample_truncated_exponential(rng, theta, theta_min, theta_max, size)
    lower, upper = int(np.ceil(theta_min)), int(np.floor(theta_max))
    rounded = np.clip(np.rint(draws), lower, upper).astype(np.int64)
    return int(rounded) if size is None else rounded


def chartist_size(
    alpha_c: float,
    sigma_c: float,
    p_prev: float,
    p_prev2: float,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> FloatOrArray:
    """Chartist demand: alpha_c * (P[t-1] - P[t-2]) + N(0, sigma_c^2)"""
    return alpha_c * (p_prev - p_prev2) + rng.normal(0.0, sigma_c, size)


def fundamentalist_size(
    alpha_f: float,
    sigma_f: float,
    f_now: float,
    p_prev: float,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> FloatOrArray:
    """Fundamentalist demand: alpha_f * (F[t] - P[t-1]) + N(0, sigma_f^2)"""
    return alpha_f * (f_now - p_prev) + rng.normal(0.0, sigma_f, size)


def _positive_multiplicative_draw(
    base: float,
    drift: float,
    scale: float,
    rng: np.random.Generator,
    size: Optional[int],
) -> FloatOrArray:
    """base * (1 + drift) * (1 + N(0, scale^2)), redrawing non-positive values"""
    shocks = rng.normal(0.0, scale, size)
    values = base * (1.0 + drift) * (1.0 + shocks)
    if size is None:
        while values <= 0:
            values = base * (1.0 + drift) * (1.0 + rng.normal(0.0, scale))
        return float(values)
    bad = values <= 0
    while bad.any():
        values[bad] = base * (1.0 + drift) * (1.0 + rng.normal(0.0, scale, int(bad.sum())))
        bad = values <= 0
    return values


def update_fundamental(
    f_prev: float,
    delta: float,
    sigma_y: float,
    rng: np.random.Generator,
) -> float:
    """F[t] = F[t-1] * (1 + delta) * (1 + y), y ~ N(0, sigma_y^2)"""
    return _positive_multiplicative_draw(f_prev, delta, sigma_y, rng, None)


def lf_order_price(
    p_prev: float,
    delta: float,
    sigma_z: float,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> FloatOrArray:
    """LF limit price: P[t-1] * (1 + delta) * (1 + z), z ~ N(0, sigma_z^2)"""
    return _positive_multiplicative_draw(p_prev, delta, sigma_z, rng, size)


def lf_to_order(
    signed_size: float,
    price: float,
    gamma_L: int,
    session: int,
    trader_id: int,
    order_id: int,
) -> Optional[LimitOrder]:
    """Turn a signed demand into a limit order; zero demand places nothing"""
    if signed_size == 0:
        return None
    return LimitOrder(
        order_id=order_id,
        trader_id=trader_id,
        side=Side.BUY if signed_size > 0 else Side.SELL,
        price=float(price),
        size=float(abs(signed_size)),
        placed_session=session,
        lifetime=gamma_L,
    )


def lf_profit(market_price: float, order_price: FloatOrArray, signed_size: FloatOrArray) -> FloatOrArray:
    """(P[t] - order price) * signed demand"""
    return (market_price - order_price) * signed_size


def chartist_probability(pi_c: FloatOrArray, pi_f: FloatOrArray, zeta: float) -> FloatOrArray:
    """
    Probability of playing chartist next activation

    exp(pi_c/zeta) / (exp(pi_c/zeta) + exp(pi_f/zeta)), evaluated as the
    logistic function of (pi_c - pi_f)/zeta, which cannot overflow.
    """
    if zeta <= 0:
        raise InvalidParametersError("zeta", f"must be > 0 (got {zeta})")
    return special.expit((np.asarray(pi_c) - np.asarray(pi_f)) / zeta)


def hf_is_active(p_prev: float, p_prev2: float, threshold: FloatOrArray) -> Union[bool, np.ndarray]:
    """Activation when the last absolute relative price change exceeds the threshold"""
    change = abs(p_prev - p_prev2) / p_prev2
    active = change > np.asarray(threshold)
    return bool(active) if np.ndim(active) == 0 else active


def exponential_size(
    opposite_mean: Optional[float],
    lambda_: float,
    rng: np.random.Generator,
) -> Optional[float]:
    """Exponential size with mean lambda * opposite_mean; None when there is no opposite depth"""
    if opposite_mean is None or opposite_mean <= 0:
        return None
    size = float(rng.exponential(lambda_ * opposite_mean))
    return size if size > 0 else None


def hf_order_size(
    opposite_sizes: Sequence[float],
    lambda_: float,
    rng: np.random.Generator,
) -> Optional[float]:
    """HF order size from the resting sizes on the opposite side of the book"""
    if len(opposite_sizes) == 0:
        return None
    return exponential_size(float(np.mean(opposite_sizes)), lambda_, rng)


def hf_order_price(
    best_bid: Optional[float],
    best_ask: Optional[float],
    side: Side,
    kappa_min: float,
    kappa_max: float,
    rng: np.random.Generator,
) -> Optional[float]:
    """
    HF limit price

    Sell: best_bid * (1 - kappa); Buy: best_ask * (1 + kappa), with
    kappa ~ U[kappa_min, kappa_max]. None when the referenced quote is missing.
    """
    reference = best_bid if side is Side.SELL else best_ask
    if reference is None:
        return None
    kappa = rng.uniform(kappa_min, kappa_max)
    if side is Side.SELL:
        return reference * (1.0 - kappa)
    return reference * (1.0 + kappa)


def hf_profit(market_price: float, order_price: float, size: float, side: Side) -> float:
    """Same identity as lf_profit with the size signed by side"""
    signed = size if side is Side.BUY else -size
    return (market_price - order_price) * signed
