# spin_limit_shapes/ui_utils.py

from typing import Dict, List, Sequence

from colorama import Fore, Style, init

init(autoreset=True)

QUIET = False


def set_quiet(quiet: bool) -> None:
    global QUIET
    QUIET = quiet


def print_pass(message: str) -> None:
    print(f"{Fore.GREEN}✅ PASS {message}")


def print_fail(message: str) -> None:
    print(f"{Fore.RED}❌ FAIL {message}")


def print_error(message: str) -> None:
    print(f"{Fore.RED}❌ Error: {message}")


def print_warning(message: str) -> None:
    print(f"{Fore.YELLOW}⚠️ {message}")


def print_info(message: str) -> None:
    if not QUIET:
        print(f"🔍 {message}")


def print_written(path: str) -> None:
    if not QUIET:
        print(f"📁 wrote {path}")


def report_check(name: str, passed: bool, detail: str = "") -> bool:
    """Print one PASS/FAIL line and hand the verdict back."""
    line = f"{name} {detail}".rstrip()
    if passed:
        print_pass(line)
    else:
        print_fail(line)
    return passed


def display_table(title: str, rows: List[Dict[str, str]], columns: Sequence[str] = ()) -> None:
    """Print rows as an aligned table under an emoji title."""
    if QUIET or not rows:
        return
    columns = list(columns) or list(rows[0].keys())
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in columns}

    print(f"\n📊 {Style.BRIGHT}{title}")
    print("=" * max(40, sum(widths.values()) + 2 * len(columns)))
    print("  ".join(c.ljust(widths[c]) for c in columns))
    for row in rows:
        print("  ".join(str(row.get(c, "")).ljust(widths[c]) for c in columns))
    print()
