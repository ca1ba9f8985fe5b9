# --- eiscong.py ---
import sys

from eiscong_lib.cli import cmd_dispatch


def main():
    """Main entry point for the eiscong CLI."""
    exit_code, output = cmd_dispatch(sys.argv[1:])
    if output:
        sys.stdout.write(output)
        sys.stdout.flush()
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
