"""
Locating input files and bundled resources.

The bundled dataset, SVG template and example problems live under ``config/``
inside the package, so ``config/data/hudson_bay_hare_lynx.csv`` resolves from any
working directory unless a file of that name shadows it locally.
"""

from pathlib import Path
from typing import Optional, Union

PathLike = Union[str, Path]


class PathResolver:
    """
    Relative paths are tried against an ordered list of search roots:

    1. ``base_dir`` when given (the directory of the file that refers to the path)
    2. the working directory
    3. the package directory

    Absolute paths are used as given. Output paths land in the first root.
    """

    PACKAGE_ROOT = Path(__file__).resolve().parents[1]  # llds/

    @classmethod
    def get_project_root(cls) -> Path:
        return cls.PACKAGE_ROOT

    @classmethod
    def search_roots(cls, base_dir: Optional[PathLike] = None) -> list[Path]:
        roots = [Path(base_dir).expanduser()] if base_dir is not None else []
        roots += [Path.cwd(), cls.get_project_root()]
        return roots

    @classmethod
    def resolve(
        cls,
        path: PathLike,
        create_if_missing: bool = False,
        must_exist: bool = False,
        base_dir: Optional[PathLike] = None,
    ) -> Path:
        """
        Resolve ``path`` (tilde expanded) for reading, or for writing with
        ``create_if_missing``.

        When nothing matches, the path under the first search root is returned
        so the caller reports the missing file where the user expects it.

        Raises:
            FileNotFoundError: If ``must_exist`` and no search root holds the path
        """
        path = Path(path).expanduser()
        if path.is_absolute():
            if must_exist and not path.exists():
                raise FileNotFoundError(f"Path not found: {path}")
            return path

        roots = cls.search_roots(base_dir)
        if not create_if_missing:
            for root in roots:
                if (root / path).exists():
                    return root / path
            if must_exist:
                tried = "\n".join(f"  - {root / path}" for root in roots)
                raise FileNotFoundError(f"Path not found in:\n{tried}")
        return roots[0] / path
