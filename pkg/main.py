"""
Aplicación principal de selvar.

Equivale al comando ``selvar`` instalado por el paquete.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / 'src'))

from selvar.cli import main  # noqa: E402

if __name__ == '__main__':
    sys.exit(main())
