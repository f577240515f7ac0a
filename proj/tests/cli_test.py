"""End-to-end checks of the xfg command line: exit codes, schema validity,
verify round trips, tamper detection, cache reloads and worker determinism."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

XFG = str(Path(sys.argv[1]).resolve())
SCHEMAS = Path(sys.argv[2])

resources = []
for name in ("certificate", "action-report", "verify-report"):
    doc = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(doc)
    resources.append((f"{name}.schema.json", Resource.from_contents(doc)))
registry = Registry().with_resources(resources)


def validator(name):
    schema = registry.contents(f"{name}.schema.json")
    return jsonschema.Draft202012Validator(schema, registry=registry)


CERT = validator("certificate")
ACTION = validator("action-report")
REPORT = validator("verify-report")

failures = []


def check(ok, what):
    print(("ok   " if ok else "FAIL ") + what)
    if not ok:
        failures.append(what)


def run(*args, env_cache=None):
    env = {"PATH": "/usr/bin:/bin"}
    if env_cache:
        env["XFG_CACHE_DIR"] = str(env_cache)
    return subprocess.run([XFG, *args], capture_output=True, text=True, env=env,
                          cwd=work)


def verify(path):
    res = run("verify", str(path))
    REPORT.validate(json.loads(res.stdout))
    return res.returncode


with tempfile.TemporaryDirectory() as tmp:
    work = Path(tmp)
    cache = work / "cache"

    res = run("enumerate", "--rank", "2", "--prime", "5", env_cache=cache)
    check(res.returncode == 0 and res.stdout.strip() == "19", "enumerate 2 5 prints 19")
    cached = cache / "classes-n2-p5.xfgc"
    check(cached.exists(), "cache directory taken from XFG_CACHE_DIR")
    first = cached.read_bytes()
    run("enumerate", "--rank", "2", "--prime", "5", "--strategy", "full",
        "--cache-dir", str(work / "c2"))
    check((work / "c2" / "classes-n2-p5.xfgc").read_bytes() == first,
          "full and pruned strategies write identical caches")
    res = run("enumerate", "--rank", "1", "--prime", "5", env_cache=cache)
    check(res.returncode == 0 and res.stdout.strip() == "0", "enumerate rank 1 prints 0")
    res = run("enumerate", "--rank", "2", "--prime", "4", env_cache=cache)
    check(res.returncode == 1 and "InvalidPrime" in res.stderr, "invalid prime exits 1")
    res = run("enumerate", "--rank", "3", "--prime", "5", "--budget", "1000",
              env_cache=cache)
    check(res.returncode == 2 and "ResourceLimit" in res.stderr, "budget overrun exits 2")
    check(run("frobnicate").returncode == 1, "unknown subcommand exits 1")

    res = run("action", "--rank", "1", "--prime", "5", env_cache=cache)
    doc = json.loads(res.stdout)
    ACTION.validate(doc)
    check(doc["N"] == 0 and doc["result"] == "Other", "action rank 1 is Other on 0 points")
    check(run("action", "--rank", "3", "--prime", "9").returncode == 1,
          "action with invalid prime exits 1")
    res = run("action", "--rank", "2", "--prime", "5", env_cache=cache)
    check(cached.read_bytes() == first, "action reloads the cache unchanged")
    outputs = {}
    for w in ("1", "4"):
        res = run("action", "--rank", "3", "--prime", "5", "--workers", w,
                  "--cache-dir", str(work / f"w{w}"))
        outputs[w] = res.stdout
    doc = json.loads(outputs["1"])
    ACTION.validate(doc)
    check(doc["N"] == 1668 and doc["result"] == "Symmetric", "action 3 5 is Symmetric on 1668")
    check(outputs["1"] == outputs["4"], "action output identical for 1 and 4 workers")

    res = run("rf-witness", "--rank", "2", "--word", "x1.x2.X1.X2", "-o", "rf.json")
    check(res.returncode == 0, "rf-witness exits 0")
    CERT.validate(json.loads((work / "rf.json").read_text()))
    check(verify(work / "rf.json") == 0, "rf-witness certificate verifies")
    res = run("rf-witness", "--rank", "2", "--word", "x1.X1")
    check(res.returncode == 1 and "TrivialWord" in res.stderr, "trivial word exits 1")
    res = run("rf-witness", "--rank", "2", "--word", "x1.x2", "--prime-ceiling", "4")
    check(res.returncode == 2, "prime ceiling exits 2")
    res = run("rf-witness", "--rank", "2", "--word", "x1.y2")
    check(res.returncode == 1, "unparsable word exits 1")

    for w in ("1", "4"):
        run("--workers", w, "certificate", "theorem1", "--genus", "3", "--r", "2",
            "--pmax", "7", "-o", f"t1-{w}.json")
    t1 = json.loads((work / "t1-1.json").read_text())
    CERT.validate(t1)
    check(t1["outcome"] == "symmetric" and t1["p"] == 5 and t1["R"] == 1668,
          "theorem1 3 2 7 is symmetric at p=5 on 1668 classes")
    check((work / "t1-1.json").read_bytes() == (work / "t1-4.json").read_bytes(),
          "theorem1 certificate identical for 1 and 4 workers")
    check(verify(work / "t1-1.json") == 0, "theorem1 certificate verifies")

    t1["permutations"][0][0], t1["permutations"][0][1] = (
        t1["permutations"][0][1], t1["permutations"][0][0])
    (work / "tampered.json").write_text(json.dumps(t1))
    check(verify(work / "tampered.json") == 3, "corrupted permutation exits 3")
    (work / "junk.json").write_text("{not json")
    check(verify(work / "junk.json") == 1, "unparsable certificate exits 1")
    (work / "other.json").write_text('{"format": "something"}')
    check(verify(work / "other.json") == 1, "foreign document exits 1")
    check(verify(work / "missing.json") == 1, "missing file exits 1")

    res = run("certificate", "involve", "--order", "6", "-o", "inv.json")
    inv = json.loads((work / "inv.json").read_text())
    CERT.validate(inv)
    check(res.returncode == 0 and inv["r"] == 6 and inv["theorem1"]["outcome"] == "symmetric",
          "involve 6 wraps a symmetric theorem1 certificate")
    check(verify(work / "inv.json") == 0, "involve certificate verifies")
    check(run("certificate", "involve", "--order", "0").returncode == 1,
          "involve order 0 exits 1")
    check(run("certificate", "theorem1", "--genus", "2", "--r", "2").returncode == 1,
          "theorem1 genus 2 exits 1")

    (work / "twist.json").write_text('{"twists": "l1"}')
    res = run("separate", "--genus", "2", "--map", "twist.json", "-o", "sep.json")
    sep = json.loads((work / "sep.json").read_text())
    CERT.validate(sep)
    check(res.returncode == 0 and sep["kind"] == "separability", "separate l1 gives a witness")
    check(verify(work / "sep.json") == 0, "separability certificate verifies")
    sep["image"] = "x2"
    (work / "sep-bad.json").write_text(json.dumps(sep))
    check(verify(work / "sep-bad.json") == 3, "wrong separability image exits 3")

    (work / "mer.json").write_text('{"twists": "m1.m2"}')
    run("separate", "--genus", "3", "--map", "mer.json", "-o", "stab.json")
    stab = json.loads((work / "stab.json").read_text())
    CERT.validate(stab)
    check(stab["kind"] == "stabilizes", "meridian twists stabilize")
    check(verify(work / "stab.json") == 0, "stabilizes certificate verifies")
    (work / "bad-map.json").write_text('{"images": ["a1"], "inverse": ["a1"]}')
    check(run("separate", "--genus", "2", "--map", "bad-map.json").returncode == 1,
          "invalid surface map exits 1")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
