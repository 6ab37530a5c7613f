"""Run the acceptance tests and echo the per-criterion PASS/FAIL table."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    cmd = [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"]
    proc = subprocess.run(cmd, cwd=ROOT, capture_output=True, text=True)
    lines = proc.stdout.splitlines()
    table = [ln for ln in lines if ln.startswith("criterion ")]
    print("\n".join(table) if table else proc.stdout)
    print(lines[-1] if lines else "")
    return proc.returncode


if __name__ == "__main__":
    sys.exit(main())
