'''
Shared pytest configuration
Startup: python -m pytest tests -v            (everything)
         python -m pytest tests -m "not slow"  (skip the degree-120 computation)
'''
import os
import sys

import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: runs the full k120 / Delta60 computation')


@pytest.fixture(scope='session')
def pipeline_artifacts():
    '''The whole chain u -> k120 -> Delta60, computed once per session'''
    from weierstrass import run_pipeline
    return run_pipeline()
