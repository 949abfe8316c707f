"""
Coloured status lines on stderr. Result payloads never go through here.
"""

import sys

from colorama import Fore, Style, init

init()

_COLOURS = {
    "info": Fore.CYAN,
    "ok": Fore.GREEN,
    "warn": Fore.YELLOW,
    "error": Fore.RED,
}
_PREFIX = {"info": "•", "ok": "✅", "warn": "⚠️", "error": "❌"}
_quiet = False


def set_quiet(quiet: bool):
    global _quiet
    _quiet = bool(quiet)


def status(message: str, kind: str = "info"):
    if _quiet:
        return
    colour = _COLOURS.get(kind, "")
    print(f"{colour}{_PREFIX.get(kind, '')} {message}{Style.RESET_ALL}", file=sys.stderr)
