#!/usr/bin/env python3
"""Prepend the Apache-2.0 header to project sources. Idempotent."""
import pathlib
import sys

NOTICE = """Copyright 2026 The soeval Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License."""

DIRS = ["include", "src", "tools", "tests", "bench"]
SKIP = {"build", "vendor", "fixtures"}


def header(prefix):
    return "".join((prefix + " " + line).rstrip() + "\n" for line in NOTICE.splitlines()) + "\n"


def style(path):
    if path.suffix in (".cpp", ".hpp", ".h"):
        return "//"
    if path.suffix == ".py" or path.name == "CMakeLists.txt":
        return "#"
    return None


def apply(path):
    prefix = style(path)
    if prefix is None:
        return False
    text = path.read_text()
    if "Licensed under the Apache License" in text[:1000]:
        return False
    block = header(prefix)
    if text.startswith("#!"):
        first, _, rest = text.partition("\n")
        text = first + "\n" + block + rest
    else:
        text = block + text
    path.write_text(text)
    return True


def main(root):
    root = pathlib.Path(root)
    files = [root / "CMakeLists.txt"]
    for d in DIRS:
        for p in sorted((root / d).rglob("*")):
            if p.is_file() and not SKIP & set(p.relative_to(root).parts):
                files.append(p)
    changed = sum(apply(p) for p in files)
    print(f"{changed} file(s) updated")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent)
