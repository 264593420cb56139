#!/usr/bin/env python3
"""Black-box contract tests for the bogolab command-line tool.

Usage: cli_contract_test.py <path-to-bogolab-binary>

Plain asserts, no test framework: every check prints one line, and the
process exits non-zero on the first violated contract.
"""

import json
import os
import subprocess
import sys
import tempfile

GOLDEN_FREE_TABLE = (
    "g,N,M,E_exact,E_gp,E_bog,gap1_exact,eps1_bog,depletion_bog,fc_exact,fc_bog,mu,status\n"
    "0,4,8,2,2,2,1,1,0,1,1,0.5,ok\n"
)

CHECKS = 0


def run(cli, *args, env_extra=None):
    env = os.environ.copy()
    env.pop("BOGOLAB_THREADS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [cli, *args], capture_output=True, text=True, env=env, timeout=300
    )


def check(label, condition, detail=""):
    global CHECKS
    CHECKS += 1
    if not condition:
        print(f"[FAIL] {label}: {detail}")
        sys.exit(1)
    print(f"[ok] {label}")


def main():
    cli = sys.argv[1]
    tmp = tempfile.mkdtemp(prefix="bogolab_cli_")

    # ---- argument handling -------------------------------------------------
    r = run(cli)
    check("missing subcommand exits 2", r.returncode == 2, r.stderr)

    r = run(cli, "--help")
    check("--help exits 0 and lists subcommands",
          r.returncode == 0 and "compare" in r.stdout and "sweep" in r.stdout, r.stdout)

    r = run(cli, "exact", "--no-such-flag")
    check("unknown flag exits 2", r.returncode == 2, r.stderr)

    # ---- happy paths -------------------------------------------------------
    r = run(cli, "exact")
    check("exact writes a quantity,value table to stdout",
          r.returncode == 0 and r.stdout.startswith("quantity,value\n")
          and "dimension,330\n" in r.stdout, r.stdout)

    r = run(cli, "compare")
    check("default compare reproduces the frozen free-gas row",
          r.returncode == 0 and r.stdout == GOLDEN_FREE_TABLE, repr(r.stdout))

    r = run(cli, "exact", "--set", "n_particles=2", "--set", "modes=2")
    check("--set overrides take effect",
          r.returncode == 0 and "dimension,3\n" in r.stdout, r.stdout)

    cfg = os.path.join(tmp, "run.cfg")
    with open(cfg, "w") as fh:
        fh.write("# small run\nn_particles = 3\nmodes = 5\ncoupling = 0.1\n")
    r = run(cli, "exact", "--config", cfg)
    check("config files are honored",
          r.returncode == 0 and "dimension,35\n" in r.stdout, r.stdout)

    r = run(cli, "exact", "--config", cfg, "--set", "modes=2", "--set", "n_particles=2")
    check("--set wins over the config file",
          r.returncode == 0 and "dimension,3\n" in r.stdout, r.stdout)

    r = run(cli, "condensate", "--set", "coupling=0.4", "--set", "modes=10")
    check("condensate reports the virial diagnostic",
          r.returncode == 0 and "virial_defect," in r.stdout and "coeff_9," in r.stdout,
          r.stdout)

    r = run(cli, "bogoliubov", "--set", "coupling=0.2")
    check("bogoliubov lists the quasiparticle ladder",
          r.returncode == 0 and "epsilon_0," in r.stdout and "epsilon_6," in r.stdout,
          r.stdout)

    # ---- sweep -------------------------------------------------------------
    r = run(cli, "sweep", "--set", "n_particles=3", "--set", "modes=6",
            "--set", "coupling_start=0", "--set", "coupling_stop=0.2",
            "--set", "coupling_steps=3")
    lines = r.stdout.splitlines()
    check("sweep emits one row per grid point, in grid order",
          r.returncode == 0 and len(lines) == 4 and lines[1].startswith("0,3,6,")
          and lines[3].startswith("0.2,3,6,") and all(l.endswith(",ok") for l in lines[1:]),
          r.stdout)

    r = run(cli, "sweep")
    check("sweep without a grid is a config error",
          r.returncode == 2 and "coupling_steps" in r.stderr, r.stderr)

    # ---- json --------------------------------------------------------------
    r = run(cli, "compare", "--set", "output_format=json", "--set", "coupling=-1",
            "--set", "n_particles=6", "--set", "modes=8")
    check("an unstable point stays exit 0 with its row marked", r.returncode == 0, r.stderr)
    rows = json.loads(r.stdout)
    check("json output parses and maps non-finite values to null",
          len(rows) == 1 and rows[0]["status"] == "unstable"
          and rows[0]["E_bog"] is None and rows[0]["E_exact"] is not None,
          r.stdout)

    # ---- failure exit codes ------------------------------------------------
    with open(os.path.join(tmp, "bad.cfg"), "w") as fh:
        fh.write("n_particles = 3\nnot_a_key = 7\n")
    r = run(cli, "exact", "--config", os.path.join(tmp, "bad.cfg"))
    check("unknown config key exits 2 naming the line",
          r.returncode == 2 and "line 2" in r.stderr, r.stderr)

    r = run(cli, "exact", "--set", "coupling=fast")
    check("malformed override exits 2 naming the override",
          r.returncode == 2 and "override" in r.stderr, r.stderr)

    r = run(cli, "exact", "--config", os.path.join(tmp, "missing.cfg"))
    check("unreadable config exits 5", r.returncode == 5, r.stderr)

    r = run(cli, "exact", "--set", "n_particles=60", "--set", "modes=30")
    check("oversized basis exits 3", r.returncode == 3 and "capacity" in r.stderr, r.stderr)

    r = run(cli, "bogoliubov", "--set", "coupling=-1.0", "--set", "n_particles=6",
            "--set", "modes=8")
    check("unstable fluctuations exit 4 with a diagnostic",
          r.returncode == 4 and "instability error" in r.stderr, r.stderr)

    r = run(cli, "condensate", "--set", "coupling=1.0", "--set", "gp_max_iter=2")
    check("an exhausted solver budget exits 4",
          r.returncode == 4 and "convergence error" in r.stderr, r.stderr)

    r = run(cli, "compare", "--set",
            "output_path=/nonexistent_directory_bogolab/out.csv")
    check("unwritable output exits 5", r.returncode == 5 and "io error" in r.stderr,
          r.stderr)

    # ---- determinism -------------------------------------------------------
    out_a = os.path.join(tmp, "a.csv")
    out_b = os.path.join(tmp, "b.csv")
    base = ["--set", "n_particles=3", "--set", "modes=6", "--set", "coupling=0.2"]
    ra = run(cli, "compare", *base, "--set", f"output_path={out_a}")
    rb = run(cli, "compare", *base, "--set", f"output_path={out_b}")
    with open(out_a, "rb") as fh:
        bytes_a = fh.read()
    with open(out_b, "rb") as fh:
        bytes_b = fh.read()
    check("two identical compare runs write byte-identical files",
          ra.returncode == 0 and rb.returncode == 0 and bytes_a == bytes_b and bytes_a,
          f"{ra.returncode} {rb.returncode}")

    sweep = ["sweep", "--set", "n_particles=3", "--set", "modes=6",
             "--set", "coupling_start=0", "--set", "coupling_stop=0.3",
             "--set", "coupling_steps=4"]
    r1 = run(cli, *sweep, env_extra={"BOGOLAB_THREADS": "1"})
    r2 = run(cli, *sweep, env_extra={"BOGOLAB_THREADS": "2"})
    check("sweep output is independent of the worker count",
          r1.returncode == 0 and r2.returncode == 0 and r1.stdout == r2.stdout,
          f"{r1.returncode} {r2.returncode}")

    r = run(cli, *sweep, env_extra={"BOGOLAB_THREADS": "zero"})
    check("a malformed BOGOLAB_THREADS exits 2",
          r.returncode == 2 and "BOGOLAB_THREADS" in r.stderr, r.stderr)

    print(f"all {CHECKS} CLI contract checks passed")


if __name__ == "__main__":
    main()
