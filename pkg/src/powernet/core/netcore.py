"""Evaluation, size counts and composition of sigma_s networks."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import numpy.typing as npt
from scipy.linalg import block_diag

from powernet.core.vandermonde import default_nodes, solve_lambda
from powernet.errors import InvalidInputError, NonFiniteError, ShapeError
from powernet.models.network import AffineLayer, FloatArray, NetStats, PowerNet, check_power

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 4096


# -- evaluation ---------------------------------------------------------------


def _activate(values: FloatArray, s: int) -> FloatArray:
    with np.errstate(over="ignore", invalid="ignore"):
        return np.maximum(values, 0.0) ** s


def _check_finite(values: FloatArray, layer: int) -> None:
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(f"overflow or NaN after layer {layer}")


def evaluate(net: PowerNet, x: npt.ArrayLike) -> FloatArray:
    """Evaluate a net at one input vector.

    Row sums use numpy's pairwise reduction along a contiguous axis.
    """
    values = np.asarray(x, dtype=np.float64).reshape(-1)
    if values.shape[0] != net.input_dim:
        raise ShapeError(f"net expects {net.input_dim} inputs, got {values.shape[0]}")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("input contains non-finite values")
    last = net.depth - 1
    for index, layer in enumerate(net.layers):
        with np.errstate(over="ignore", invalid="ignore"):
            values = np.sum(layer.weights * values, axis=1) + layer.bias
        if index < last:
            values = _activate(values, net.power)
        _check_finite(values, index)
    return values


def _evaluate_chunk(net: PowerNet, points: FloatArray) -> FloatArray:
    values = points
    last = net.depth - 1
    for index, layer in enumerate(net.layers):
        with np.errstate(over="ignore", invalid="ignore"):
            values = values @ layer.weights.T + layer.bias
        if index < last:
            values = _activate(values, net.power)
        _check_finite(values, index)
    return values


def evaluate_batch(
    net: PowerNet,
    points: npt.ArrayLike,
    *,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> FloatArray:
    """Evaluate a net on an (m, d) array of points, returning (m, output_dim).

    Chunks are evaluated independently; with ``workers > 1`` they run on a thread
    pool and are reassembled in input order.
    """
    array = np.asarray(points, dtype=np.float64)
    if array.ndim == 1 and net.input_dim == 1:
        array = array[:, None]
    if array.ndim != 2 or array.shape[1] != net.input_dim:
        raise ShapeError(f"net expects points of shape (m, {net.input_dim}), got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidInputError("points contain non-finite values")
    if chunk < 1:
        raise InvalidInputError(f"chunk size must be positive, got {chunk}")
    if array.shape[0] == 0:
        return np.zeros((0, net.output_dim))

    pieces = [array[start : start + chunk] for start in range(0, array.shape[0], chunk)]
    if workers > 1 and len(pieces) > 1:
        logger.debug("Evaluating %d chunks on %d threads", len(pieces), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda piece: _evaluate_chunk(net, piece), pieces))
    else:
        results = [_evaluate_chunk(net, piece) for piece in pieces]
    return np.vstack(results)


def stats(net: PowerNet) -> NetStats:
    """Depth, hidden nodes and nonzero weights plus biases over all layers."""
    widths = net.hidden_widths
    return NetStats(
        depth=net.depth,
        nodes=sum(widths),
        nonzeros=sum(layer.nonzeros for layer in net.layers),
        widths=widths,
    )


# -- composition --------------------------------------------------------------


def concat(outer: PowerNet, inner: PowerNet) -> PowerNet:
    """outer after inner, merging inner's last layer into outer's first."""
    if outer.power != inner.power:
        raise ShapeError(f"cannot compose nets of power {outer.power} and {inner.power}")
    if outer.input_dim != inner.output_dim:
        raise ShapeError(
            f"outer net expects {outer.input_dim} inputs, inner net yields {inner.output_dim}"
        )
    last = inner.layers[-1]
    first = outer.layers[0]
    junction = AffineLayer(
        weights=first.weights @ last.weights,
        bias=first.weights @ last.bias + first.bias,
    )
    layers = (*inner.layers[:-1], junction, *outer.layers[1:])
    return PowerNet(power=inner.power, layers=layers, input_dim=inner.input_dim)


def chain(*stages: PowerNet) -> PowerNet:
    """Compose stages left to right: the first stage reads the input."""
    if not stages:
        raise InvalidInputError("chain needs at least one stage")
    net = stages[0]
    for stage in stages[1:]:
        net = concat(stage, net)
    return net


def _common(nets: Sequence[PowerNet]) -> tuple[int, int]:
    if not nets:
        raise InvalidInputError("need at least one net")
    powers = {net.power for net in nets}
    depths = {net.depth for net in nets}
    if len(powers) != 1:
        raise ShapeError(f"nets have different powers {sorted(powers)}")
    if len(depths) != 1:
        raise ShapeError(f"nets have different depths {sorted(depths)}")
    return powers.pop(), depths.pop()


def wire(nets: Sequence[PowerNet], inputs: Sequence[Sequence[int]], input_dim: int) -> PowerNet:
    """Run equal-depth nets side by side on selected input coordinates.

    Net i reads coordinates ``inputs[i]`` of a shared input of size ``input_dim``;
    outputs are concatenated in order. Deeper layers are block diagonal.
    """
    power, depth = _common(nets)
    if len(inputs) != len(nets):
        raise ShapeError(f"got {len(inputs)} input maps for {len(nets)} nets")
    for net, columns in zip(nets, inputs, strict=True):
        if len(columns) != net.input_dim:
            raise ShapeError(f"net expects {net.input_dim} inputs, mapped {len(columns)}")
        if len(set(columns)) != len(columns):
            raise ShapeError(f"input map {list(columns)} repeats a coordinate")
        if any(column < 0 or column >= input_dim for column in columns):
            raise ShapeError(f"input map {list(columns)} leaves 0..{input_dim - 1}")

    first_rows = sum(net.layers[0].rows for net in nets)
    weights = np.zeros((first_rows, input_dim))
    row = 0
    for net, columns in zip(nets, inputs, strict=True):
        layer = net.layers[0]
        weights[row : row + layer.rows, list(columns)] = layer.weights
        row += layer.rows
    layers = [AffineLayer(weights, np.concatenate([net.layers[0].bias for net in nets]))]
    for level in range(1, depth):
        layers.append(
            AffineLayer(
                weights=block_diag(*(net.layers[level].weights for net in nets)),
                bias=np.concatenate([net.layers[level].bias for net in nets]),
            )
        )
    return PowerNet(power=power, layers=tuple(layers), input_dim=input_dim)


def parallel(*nets: PowerNet) -> PowerNet:
    """Nets sharing one input, zero padded to the widest input dimension."""
    width = max(net.input_dim for net in nets)
    return wire(nets, [list(range(net.input_dim)) for net in nets], width)


def tensor(*nets: PowerNet) -> PowerNet:
    """Nets on disjoint consecutive blocks of the input."""
    inputs: list[list[int]] = []
    offset = 0
    for net in nets:
        inputs.append(list(range(offset, offset + net.input_dim)))
        offset += net.input_dim
    return wire(nets, inputs, offset)


def shared_first_input_tensor(nets: Sequence[PowerNet]) -> PowerNet:
    """Nets that all read coordinate 0 and otherwise consecutive private blocks."""
    inputs: list[list[int]] = []
    offset = 1
    for net in nets:
        private = net.input_dim - 1
        inputs.append([0, *range(offset, offset + private)])
        offset += private
    return wire(nets, inputs, offset)


# -- building blocks ----------------------------------------------------------


def affine_net(weights: npt.ArrayLike, bias: npt.ArrayLike, s: int) -> PowerNet:
    """A depth-1 net computing A x + b."""
    layer = AffineLayer(weights=np.asarray(weights, dtype=np.float64), bias=bias)
    return PowerNet(power=check_power(s), layers=(layer,), input_dim=layer.cols)


def select_net(columns: Sequence[int], input_dim: int, s: int) -> PowerNet:
    """A depth-1 net returning the given input coordinates."""
    weights = np.zeros((len(columns), input_dim))
    weights[np.arange(len(columns)), list(columns)] = 1.0
    return affine_net(weights, np.zeros(len(columns)), s)


def sum_net(width: int, s: int) -> PowerNet:
    """A depth-1 net summing its inputs."""
    return affine_net(np.ones((1, width)), np.zeros(1), s)


def constant_net(value: float, input_dim: int, s: int, depth: int = 1) -> PowerNet:
    """A net of the requested depth returning ``value``; hidden layers have one dead unit."""
    if depth < 1:
        raise InvalidInputError(f"depth must be positive, got {depth}")
    if depth == 1:
        return affine_net(np.zeros((1, input_dim)), [value], s)
    layers = [AffineLayer(np.zeros((1, input_dim)), np.zeros(1))]
    layers.extend(AffineLayer(np.zeros((1, 1)), np.zeros(1)) for _ in range(depth - 2))
    layers.append(AffineLayer(np.zeros((1, 1)), np.array([value])))
    return PowerNet(power=check_power(s), layers=tuple(layers), input_dim=input_dim)


def combination_net(
    targets: Sequence[npt.ArrayLike],
    s: int,
    *,
    scale: float = 1.0,
    nodes: npt.ArrayLike | None = None,
) -> PowerNet:
    """One hidden layer of 2s units realizing several polynomials of degree <= s at once.

    Each target lists ascending coefficients. The hidden layer evaluates
    rho_s(x / scale + b_k) through the unit pair sigma_s(x / scale + b_k) and
    sigma_s(-x / scale - b_k); output row i carries the lambda of target i.
    """
    s = check_power(s)
    if scale <= 0.0 or not np.isfinite(scale):
        raise InvalidInputError(f"scale must be positive and finite, got {scale}")
    b = default_nodes(s) if nodes is None else np.asarray(nodes, dtype=np.float64)
    if b.shape != (s,):
        raise ShapeError(f"need {s} nodes, got shape {b.shape}")
    sign = (-1.0) ** s

    hidden_weights = np.empty((2 * s, 1))
    hidden_weights[0::2, 0] = 1.0 / scale
    hidden_weights[1::2, 0] = -1.0 / scale
    hidden_bias = np.empty(2 * s)
    hidden_bias[0::2] = b
    hidden_bias[1::2] = -b

    out_weights = np.empty((len(targets), 2 * s))
    out_bias = np.empty(len(targets))
    for row, target in enumerate(targets):
        ascending = np.asarray(target, dtype=np.float64)
        if ascending.ndim != 1 or ascending.shape[0] > s + 1:
            raise ShapeError(f"target {row} needs at most {s + 1} coefficients")
        scaled = np.zeros(s + 1)
        scaled[: ascending.shape[0]] = ascending * scale ** np.arange(ascending.shape[0])
        coeffs = solve_lambda(scaled[::-1], b)
        out_weights[row, 0::2] = coeffs.weights
        out_weights[row, 1::2] = sign * coeffs.weights
        out_bias[row] = coeffs.offset
    return PowerNet(
        power=s,
        layers=(AffineLayer(hidden_weights, hidden_bias), AffineLayer(out_weights, out_bias)),
        input_dim=1,
    )


def identity_net(s: int, *, scale: float = 1.0) -> PowerNet:
    """Depth-2 identity on R with 2s hidden units, accurate on |x| <= scale."""
    return combination_net([[0.0, 1.0]], s, scale=scale)


def identity_chain(s: int, depth: int, *, scale: float = 1.0) -> PowerNet:
    """Identity of any depth: affine for depth 1, else depth - 1 identity nets chained."""
    if depth < 1:
        raise InvalidInputError(f"depth must be positive, got {depth}")
    if depth == 1:
        return affine_net([[1.0]], [0.0], s)
    return chain(*(identity_net(s, scale=scale) for _ in range(depth - 1)))


def pad_depth(net: PowerNet, depth: int, scales: Sequence[float] | None = None) -> PowerNet:
    """Lengthen a net with identity chains on every output."""
    if depth < net.depth:
        raise ShapeError(f"cannot shorten a net of depth {net.depth} to {depth}")
    if depth == net.depth:
        return net
    bounds = list(scales) if scales is not None else [1.0] * net.output_dim
    if len(bounds) != net.output_dim:
        raise ShapeError(f"got {len(bounds)} scales for {net.output_dim} outputs")
    extra = depth - net.depth + 1
    carry = tensor(
        *(identity_chain(net.power, extra, scale=magnitude(bound)) for bound in bounds)
    )
    return chain(net, carry)


def magnitude(bound: float) -> float:
    """A usable normalization scale for a value bounded by ``bound``."""
    if not np.isfinite(bound) or bound <= 0.0:
        return 1.0
    return float(np.clip(bound, 1e-100, 1e100))
