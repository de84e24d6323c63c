"""Nuitka 編譯入口點：使用 absolute import，onefile 解壓後 relative import 會失敗。"""

from semigroup_lab.cli import main

if __name__ == "__main__":
    main()
