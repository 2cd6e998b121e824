#!/usr/bin/env python3
"""Cut a small, self-consistent slice out of a Princeton WordNet 3.x noun database.

Keeps the index.noun entries of the given words, the data.noun lines of all
their synsets plus every synset one pointer away, and the full noun.exc file.
The license header of each file is preserved.

usage: make_wordnet_slice.py <wordnet-dir> <words-file> <out-dir>
"""
import os
import sys


def header_and_body(path):
    head, body = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            (head if line.startswith("  ") else body).append(line)
    return head, body


def main():
    src, words_file, out = sys.argv[1:4]
    words = [w.strip() for w in open(words_file, encoding="utf-8") if w.strip()]
    wanted = set(words)
    os.makedirs(out, exist_ok=True)

    ihead, ibody = header_and_body(os.path.join(src, "index.noun"))
    index_lines = [l for l in ibody if l.split(" ", 1)[0] in wanted]
    found = {l.split(" ", 1)[0] for l in index_lines}
    missing = wanted - found
    if missing:
        sys.exit("not in WordNet: " + ", ".join(sorted(missing)))

    offsets = set()
    for l in index_lines:
        f = l.split()
        n_ptr = int(f[3])
        offsets.update(f[6 + n_ptr:])

    dhead, dbody = header_and_body(os.path.join(src, "data.noun"))
    by_offset = {l[:8]: l for l in dbody}
    keep = set(offsets)
    for off in offsets:
        f = by_offset[off].split(" | ")[0].split()
        w_cnt = int(f[3], 16)
        i = 4 + 2 * w_cnt
        p_cnt = int(f[i])
        for k in range(p_cnt):
            sym, tgt, pos = f[i + 1 + 4 * k:i + 4 + 4 * k]
            if pos == "n":
                keep.add(tgt)

    with open(os.path.join(out, "index.noun"), "w", encoding="utf-8") as fh:
        fh.writelines(ihead + index_lines)
    with open(os.path.join(out, "data.noun"), "w", encoding="utf-8") as fh:
        fh.writelines(dhead + [by_offset[o] for o in sorted(keep)])
    with open(os.path.join(src, "noun.exc"), encoding="utf-8") as fi, \
            open(os.path.join(out, "noun.exc"), "w", encoding="utf-8") as fo:
        fo.write(fi.read())
    print(f"{len(index_lines)} index entries, {len(keep)} synsets")


if __name__ == "__main__":
    main()
