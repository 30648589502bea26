import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

INSTANCE_DIR = pathlib.Path(__file__).resolve().parent.parent / "instances"


def instance_path(name: str) -> pathlib.Path | None:
    """Benchmark file from instances/ (populated by scripts/fetch_instances.sh),
    or None when it has not been downloaded."""
    for ext in ("", ".clq", ".mis", ".txt"):
        p = INSTANCE_DIR / (name + ext)
        if p.is_file():
            return p
    return None
