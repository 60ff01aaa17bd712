"""Smoke checks: every report path can render its figure to a real PNG."""

import json

import pytest

from canvol.cli import main

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

CASES = [
    (
        "pluri",
        ["pluri", "--k3", "1/30", "--chi", "0", "--basket", "2,1",
         "--basket", "3,1", "--basket", "5,1", "--mmax", "8"],
    ),
    (
        "classify",
        ["classify", "--chi", "0", "--p2", "1", "--p3", "2",
         "--p", "4=3", "--p", "5=4", "--rmax", "15"],
    ),
    (
        "wps",
        ["wps", "--weights", "1,3,4,5,14", "--degrees", "28", "--upto", "12"],
    ),
    ("xi", ["xi", "--preset", "ii-a"]),
    ("slope", ["slope"]),
    ("prove-main", ["prove-main"]),
]


@pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
def test_figure_written_alongside_json(name, argv, tmp_path, capsys):
    target = tmp_path / f"{name}.png"
    code = main(argv + ["--figure", str(target)])
    out = capsys.readouterr().out
    assert code == 0
    json.loads(out)  # the report itself is unchanged by rendering
    blob = target.read_bytes()
    assert blob.startswith(PNG_MAGIC)
    assert len(blob) > 1000
