"""Shared test fixtures."""

from __future__ import annotations

import pytest

from semigroup_lab.ideals import constructible_closure
from semigroup_lab.semigroups import MonoidDescriptor
from semigroup_lab.systems import left_regular_axb, trivial_nat


@pytest.fixture
def nat():
    return MonoidDescriptor.nat()


@pytest.fixture
def m2():
    return MonoidDescriptor.mult(2)


@pytest.fixture
def m23():
    return MonoidDescriptor.mult(2, 3)


@pytest.fixture
def family2(m2):
    return constructible_closure(m2, 64)


@pytest.fixture
def family23(m23):
    return constructible_closure(m23, 64)


@pytest.fixture
def axb2(m2, family2):
    return left_regular_axb(m2, family2)


@pytest.fixture
def axb2_window(axb2):
    return axb2.window(3)


@pytest.fixture
def shift():
    return trivial_nat()
