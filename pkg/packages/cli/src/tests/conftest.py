"""
CLI 测试的共享 fixture：隔离的工作目录和若干小型问题文件
"""

import logging
import os

import pytest

DISTRIBUTED = """
[problem]
name = "distributed"
r = 1.0
t0 = 2.0
horizon = 20.0
step = 0.0625
initial_data = "1"

[[density]]
kernel = "1/(t - theta)"
support = [0.0, 1.0]

[lambda]
closed_form = "1/t"

[criterion]
samples = 37
"""

LARGE_GAIN = """
[problem]
r = 1.0
horizon = 6.0
step = 0.0625
initial_data = "1"

[[atom]]
delay = "1"
mass = "3"

[lambda]
closed_form = "1.0499088949640398"
"""

# V ≡ 0.1 e^{2.2925...} ≈ 0.99，落在 margin 之内
NEAR_ONE = """
[problem]
r = 1.0
horizon = 6.0
step = 0.0625
initial_data = "1"

[[atom]]
delay = "1"
mass = "0.1"

[lambda]
closed_form = "-2.2925347571405443"
"""

OUT_OF_RANGE = """
[problem]
r = 1.0
horizon = 6.0
step = 0.0625
initial_data = "1"

[[atom]]
delay = "2"
mass = "1"

[lambda]
closed_form = "0"
"""


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    """工作目录、HOME 和 DELAYRHEO_* 环境变量都指向临时目录"""
    for key in list(os.environ):
        if key.startswith("DELAYRHEO_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    yield
    root = logging.getLogger("delayrheo")
    for handler in root.handlers:
        handler.close()
    root.handlers.clear()
    root.propagate = True


def _write(tmp_path, name: str, text: str):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def distributed_spec(tmp_path):
    return _write(tmp_path, "distributed.toml", DISTRIBUTED)


@pytest.fixture
def large_gain_spec(tmp_path):
    return _write(tmp_path, "large_gain.toml", LARGE_GAIN)


@pytest.fixture
def near_one_spec(tmp_path):
    return _write(tmp_path, "near_one.toml", NEAR_ONE)


@pytest.fixture
def out_of_range_spec(tmp_path):
    return _write(tmp_path, "out_of_range.toml", OUT_OF_RANGE)
