import sys
from pathlib import Path

# ---------------- CONFIG ----------------
APP_REL_PATH = Path("app")
# ----------------------------------------

def _resource_path(rel: Path) -> Path:
    base = Path(getattr(sys, "_MEIPASS", Path(__file__).parent))
    return (base / rel).resolve()

def main(argv=None) -> int:
    # app/ modules import each other flat
    app_dir = str(_resource_path(APP_REL_PATH))
    if app_dir not in sys.path:
        sys.path.insert(0, app_dir)
    from cli import main as cli_main
    return cli_main(argv)

if __name__ == "__main__":
    sys.exit(main())
