import sys

from sigmacert.sigma_cli import run_sigma_with_context, parse_args

if __name__ == "__main__":
    sys.exit(run_sigma_with_context(parse_args()))
