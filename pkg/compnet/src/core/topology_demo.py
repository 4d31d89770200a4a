"""A module for the spike family: ReLU hats whose realizations shrink to zero
in sup norm while their Lipschitz constants, and with them the weights of
any network realizing them, grow without bound"""
from fractions import Fraction
from typing import List, Optional

from compnet.src.core import fields as _fields, network as _network, \
    util as _util
from compnet.src.core.network import Network

SPIKE_ARCHITECTURE = (1, 3, 1)
SPIKE_CENTER = Fraction(1, 2)


class SpikeFamilyMember(dict):
    """A dict-like object holding one hat network and its exact norms"""

    def __init__(self, k: int, network: Network, exact_sup: Fraction,
                 exact_lip: Fraction):
        super().__init__()
        self[_fields.Spike.K] = k
        self[_fields.Spike.NETWORK] = network
        self[_fields.Spike.EXACT_SUP] = exact_sup
        self[_fields.Spike.EXACT_LIP] = exact_lip

    @property
    def k(self) -> int:
        return self[_fields.Spike.K]

    @property
    def network(self) -> Network:
        return self[_fields.Spike.NETWORK]

    @property
    def exact_sup(self) -> Fraction:
        """sup norm of the realization"""
        return self[_fields.Spike.EXACT_SUP]

    @property
    def exact_lip(self) -> Fraction:
        """Lipschitz constant of the realization"""
        return self[_fields.Spike.EXACT_LIP]


def build_spike(k: int) -> SpikeFamilyMember:
    """The hat of height 2^(-k) and half-width 2^(-2k-1) centered at 1/2,
    built from three ReLU units with slopes s, -2s, s where s = 2^(k+1)"""
    if k < 1:
        raise ValueError('k must be at least 1')
    height = _util.dyadic(k)
    half_width = _util.dyadic(2 * k + 1)
    slope = height / half_width
    c = SPIKE_CENTER

    layers = [([[1], [1], [1]], [-(c - half_width), -c, -(c + half_width)]),
              ([[slope, -2 * slope, slope]], [0])]
    net = Network(SPIKE_ARCHITECTURE, layers)
    return SpikeFamilyMember(k, net, height, slope)


def build_zero_member() -> SpikeFamilyMember:
    """The zero network every hat converges to"""
    return SpikeFamilyMember(0, _network.zero_network(SPIKE_ARCHITECTURE),
                             Fraction(0), Fraction(0))


def scaling_norm_lower_bound(member: SpikeFamilyMember,
                             sqrt_precision: int = _util.SQRT_PRECISION) \
        -> Fraction:
    """A lower bound on the scaling norm of every ReLU network of the same
    architecture realizing the member's function"""
    act = _network.relu()
    architecture = member.network.architecture
    width_factor = _network.admissible_lipschitz_bound(architecture, act, 1,
                                                       sqrt_precision)
    # exact_lip <= width_factor * product of layer maxima <= width_factor *
    # scaling_norm^L, and L = 2
    product = member.exact_lip / width_factor
    return _util.sqrt_lower_bound(product, sqrt_precision)


def hat(k: int, x: Fraction) -> Fraction:
    """Closed form of the k-th spike"""
    height = _util.dyadic(k)
    half_width = _util.dyadic(2 * k + 1)
    return height * max(Fraction(0),
                        1 - abs(Fraction(x) - SPIKE_CENTER) / half_width)


def topology_table(k_max: int, digits: int = 12,
                   sqrt_precision: Optional[int] = None) -> List[dict]:
    """Rows (k, sup_norm, lipschitz, scaling_lower_bound) for k = 1..k_max
    as exact fractions with decimal renderings"""
    fmt = _util.Text.format_rational
    precision = sqrt_precision or _util.SQRT_PRECISION
    rows = []
    for k in range(1, k_max + 1):
        member = build_spike(k)
        values = {_fields.Spike.SUP_NORM: member.exact_sup,
                  _fields.Spike.LIPSCHITZ: member.exact_lip,
                  _fields.Spike.SCALING_LOWER_BOUND:
                      scaling_norm_lower_bound(member, precision)}
        row = {key: fmt(value) for key, value in values.items()}
        row[_fields.Spike.K] = k
        row[_fields.Spike.DECIMAL] = {key: _util.Text.decimal(value, digits)
                                      for key, value in values.items()}
        rows.append(row)
    return rows
