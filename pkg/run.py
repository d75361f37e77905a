import sys

from src.cli.__main__ import main as cli_main


def main():
    # 'cli' is accepted as a leading word so older invocations keep working
    if len(sys.argv) > 1 and sys.argv[1] == 'cli':
        sys.argv.pop(1)
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
