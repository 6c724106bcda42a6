import random

import pytest

from lvmbkit.lp import recording, verify_certificate

_session_log = []
_recorder = None


def pytest_sessionstart(session):
    global _recorder
    _recorder = recording()
    _session_log.append(_recorder.__enter__())


def pytest_sessionfinish(session, exitstatus):
    if _recorder is None:
        return
    _recorder.__exit__(None, None, None)
    log = _session_log[0]
    bad = [i for i, (system, cert) in enumerate(log) if not verify_certificate(system, cert)]
    reporter = session.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line(f"LP certificates recorded this session: {len(log)}, failing re-verification: {len(bad)}")
    if bad:
        session.exitstatus = 1


@pytest.fixture
def rng():
    return random.Random(0x5EED)
