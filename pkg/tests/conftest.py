from __future__ import annotations

import pytest

from hokmix.cli import packaged_data
from hokmix.lexicon import load_lexicon
from hokmix.normalize import load_charset, load_reading_map

# Golden rows: published segmentation and code-mixing examples the fixture
# lexicon must reproduce byte-for-byte.
GOLDEN_SEGMENTATION = (
    ("物件毋通掖甲一四界", "物件,毋通,掖,甲,一四界"),
    ("你一月日趁偌濟錢？", "你,一月日,趁,偌濟,錢？"),
    ("你毋通佮伊計較", "你,毋通,佮,伊,計較"),
)

NEWS_PAIR = ("佇美東時間四號深夜十一點宣布", "在美東時間四日深夜十一時宣布")
DICT_PAIR = ("這个袂使,彼个毋通,全你的意見了了。", "這個不行,那個不可以,你的意見真多。")

NEWS_CM = "佇_@ 美 東 時 間 四_@ 號_@ 子 夜 十_@ 一_@ 點_@ 宣_@ 布_@"
NEWS_CMDA = "佇_@ 美_@ 東_@ 時_@ 間_@ 四_@ 號_@ 深 夜 十_@ 一_@ 點_@ 宣_@ 布_@"
DICT_CM = "這_@ 个_@ 不 可 , 彼_@ 个_@ 毋_@ 通_@ , 全_@ 你_@ 的_@ 意 見 了_@ 了_@ 。"
DICT_CMDA = "這_@ 个_@ 袂_@ 使_@ , 彼_@ 个_@ 毋_@ 通_@ , 全_@ 你_@ 的_@ 意 見 了_@ 了_@ 。"


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(packaged_data("lexicon.tsv"))


@pytest.fixture(scope="session")
def reading_map():
    return load_reading_map(packaged_data("readings.tsv"))


@pytest.fixture(scope="session")
def charset():
    return load_charset(packaged_data("charset.txt"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and getattr(rep, "when", "call") == "call":
                status = "PASS" if outcome == "passed" else "FAIL"
                lines.append((nodeid.split("::")[-1], status))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status}: {name}")
