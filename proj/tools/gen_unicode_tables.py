#!/usr/bin/env python3
# Copyright 2026 The Lexaug Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates src/unicode_tables.inc from Python's unicodedata.

Usage: python3 tools/gen_unicode_tables.py > src/unicode_tables.inc
"""

import sys
import unicodedata

MAX_CP = 0x110000


def ranges(pred):
    out = []
    start = None
    for cp in range(MAX_CP):
        if pred(cp):
            if start is None:
                start = cp
        elif start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def category(cp):
    return unicodedata.category(chr(cp))


def emit_ranges(name, rs):
    print(f"constexpr CodepointRange {name}[] = {{")
    for lo, hi in rs:
        print(f"    {{0x{lo:X}, 0x{hi:X}}},")
    print("};")
    print()


def main():
    print("// Generated by tools/gen_unicode_tables.py "
          f"(Unicode {unicodedata.unidata_version}). Do not edit.")
    print()
    emit_ranges("kWordRanges", ranges(lambda cp: category(cp)[0] in "LMN"))
    emit_ranges("kPunctSymbolRanges",
                ranges(lambda cp: category(cp)[0] in "PS"))
    # Same set as Python's str.isspace(), which str.split() uses.
    emit_ranges("kWhitespaceRanges", ranges(lambda cp: chr(cp).isspace()))

    print("constexpr CaseFoldEntry kCaseFold[] = {")
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        folded = chr(cp).casefold()
        if folded == chr(cp):
            continue
        cps = [ord(c) for c in folded]
        assert len(cps) <= 3, (cp, cps)
        cps += [0] * (3 - len(cps))
        body = ", ".join(f"0x{c:X}" for c in cps)
        print(f"    {{0x{cp:X}, {{{body}}}}},")
    print("};")


if __name__ == "__main__":
    sys.exit(main())
