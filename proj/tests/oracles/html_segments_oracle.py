#!/usr/bin/env python3
# Copyright 2026 The soeval Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference HTML -> [(kind, text)] segmentation built on the stdlib html.parser.

Rules: <pre> content is CODE, verbatim. Everything else is NL with runs of ASCII whitespace
collapsed to one space, and a newline at block tag boundaries. script/style are dropped.
Adjacent NL pieces merge; empty code blocks vanish.

  html_segments_oracle.py POSTS.xml CASES.json OUT.json
"""
import json
import sys
import xml.etree.ElementTree as ET
from html.parser import HTMLParser

BLOCKS = {"address", "article", "blockquote", "br", "dd", "div", "dl", "dt", "footer", "h1", "h2", "h3",
          "h4", "h5", "h6", "header", "hr", "li", "ol", "p", "pre", "section", "table", "td", "tr", "ul"}
ASCII_SPACE = " \t\n\r\f\v"


class Segmenter(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.segments = []
        self.nl = ""
        self.code = ""
        self.pre = 0
        self.skip = 0
        self.pending = False

    def boundary(self):
        self.pending = False
        if self.nl and not self.nl.endswith("\n"):
            self.nl += "\n"

    def flush_nl(self):
        self.pending = False
        if not self.nl:
            return
        if self.segments and self.segments[-1][0] == "nl":
            self.segments[-1][1] += self.nl
        else:
            self.segments.append(["nl", self.nl])
        self.nl = ""

    def flush_code(self):
        self.pre = 0
        if self.code:
            self.segments.append(["code", self.code])
        self.code = ""

    def handle_starttag(self, tag, attrs):
        if tag in ("script", "style"):
            self.skip += 1
            return
        if self.pre:
            if tag == "pre":
                self.pre += 1
            return
        if tag == "pre":
            self.boundary()
            self.flush_nl()
            self.pre = 1
        elif tag in BLOCKS:
            self.boundary()

    def handle_endtag(self, tag):
        if tag in ("script", "style"):
            self.skip = max(0, self.skip - 1)
            return
        if self.pre:
            if tag == "pre":
                self.pre -= 1
                if self.pre == 0:
                    self.flush_code()
            return
        if tag in BLOCKS:
            self.boundary()

    def handle_data(self, data):
        if self.skip:
            return
        if self.pre:
            self.code += data
            return
        for ch in data:
            if ch in ASCII_SPACE:
                self.pending = True
                continue
            if self.pending and self.nl and not self.nl.endswith("\n"):
                self.nl += " "
            self.pending = False
            self.nl += ch

    def result(self):
        self.close()
        if self.pre:
            self.flush_code()
        self.flush_nl()
        return self.segments


def segment(html):
    p = Segmenter()
    p.feed(html)
    return p.result()


def main(posts_path, cases_path, out_path):
    bodies = []
    for row in ET.parse(posts_path).getroot().iter("row"):
        if row.get("PostTypeId") in ("1", "2") and row.get("Body") is not None:
            bodies.append(row.get("Body"))
    bodies += json.load(open(cases_path))
    out = [{"html": h, "segments": segment(h)} for h in bodies]
    with open(out_path, "w") as f:
        json.dump(out, f, indent=1, ensure_ascii=False)
        f.write("\n")


if __name__ == "__main__":
    main(*sys.argv[1:4])
