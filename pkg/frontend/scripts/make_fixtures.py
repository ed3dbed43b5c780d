#!/usr/bin/env python3
"""Capture real backend responses as test fixtures.

Runs the session service in-process and the CLI, recording exact response
bytes, so the vitest suite can replay the pentagon click-through offline
and compare the q-series payload byte-for-byte against the CLI output.
"""

import contextlib
import io
import json
import pathlib
import sys

from fastapi.testclient import TestClient

from qmut.cli import main as cli_main
from qmut.service import create_app

OUT = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixtures"
A2 = {"n": 2, "arrows": [[1, 2, 1]]}
SESSION_ID = "fixture-session"


def record(client, method: str, path: str, body=None):
    if method == "GET":
        resp = client.get(path)
    else:
        resp = client.post(path, json=body)
    text = resp.content.decode()
    # pin the random session id so the mock can match paths deterministically
    sid = None
    if path == "/sessions":
        sid = json.loads(text)["id"]
        text = text.replace(sid, SESSION_ID)
    return sid, {
        "method": method,
        "path": path,
        "body": body,
        "status": resp.status_code,
        "response": text,
    }


def scenario(seq, degree=4):
    client = TestClient(create_app())
    steps = []
    sid, step = record(client, "POST", "/sessions", {"quiver": A2})
    steps.append(step)
    for v in seq:
        _, step = record(client, "POST", f"/sessions/{sid}/mutate", {"vertex": v})
        step["path"] = step["path"].replace(sid, SESSION_ID)
        step["response"] = step["response"].replace(sid, SESSION_ID)
        steps.append(step)
    _, step = record(client, "POST", f"/sessions/{sid}/qseries", {"degree": degree})
    step["path"] = step["path"].replace(sid, SESSION_ID)
    steps.append(step)
    return steps


def undo_scenario():
    client = TestClient(create_app())
    steps = []
    sid, step = record(client, "POST", "/sessions", {"quiver": A2})
    steps.append(step)
    for method, path, body in [
        ("POST", f"/sessions/{sid}/mutate", {"vertex": 1}),
        ("POST", f"/sessions/{sid}/mutate", {"vertex": 1}),
        ("POST", f"/sessions/{sid}/qseries", {"degree": 4}),
        ("POST", f"/sessions/{sid}/undo", None),
        ("POST", f"/sessions/{sid}/undo", None),
    ]:
        _, step = record(client, method, path, body)
        step["path"] = step["path"].replace(sid, SESSION_ID)
        step["response"] = step["response"].replace(sid, SESSION_ID)
        steps.append(step)
    return steps


def cli_bytes(argv) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    assert code == 0, f"cli failed: {argv}"
    return buf.getvalue()


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "pentagon_12.json").write_text(
        json.dumps({"steps": scenario([1, 2])}, indent=1)
    )
    (OUT / "pentagon_212.json").write_text(
        json.dumps({"steps": scenario([2, 1, 2])}, indent=1)
    )
    (OUT / "undo_roundtrip.json").write_text(
        json.dumps({"steps": undo_scenario()}, indent=1)
    )

    qfile = OUT / "a2_quiver.json"
    qfile.write_text(json.dumps(A2))
    (OUT / "qseries_12_deg4.cli.txt").write_text(
        cli_bytes(["qseries", "-q", str(qfile), "-s", "1,2", "--phi", "1,2", "--degree", "4"])
    )
    (OUT / "qseries_212_deg4.cli.txt").write_text(
        cli_bytes(["qseries", "-q", str(qfile), "-s", "2,1,2", "--phi", "2,1", "--degree", "4"])
    )
    print(f"fixtures written to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
