"""The documented examples in every module stay true."""

import doctest

import pytest

import bredon.abgrp
import bredon.chaincx
import bredon.formal
import bredon.sigmacx
import bredon.tables

MODULES = [bredon.abgrp, bredon.chaincx, bredon.formal, bredon.sigmacx, bredon.tables]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_module_doctests(module):
    result = doctest.testmod(module, verbose=False)
    assert result.failed == 0
    assert result.attempted > 0
