"""Allow ``python -m fast_robber``."""

from .cli import main

if __name__ == "__main__":
    main()
