#!/usr/bin/env python3
# Copyright 2026 The qpclass Authors
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
"""Builds the bundled MNIST sample under data/mnist-5k/.

Input is the 5000-digit MNIST excerpt shipped with mlxtend
(mlxtend/data/data/mnist_5k.csv.gz: 784 raw pixel columns followed by the
label, 500 rows per digit, sorted by digit). The rows are split per digit
into 400 training and 100 test rows (file order), then interleaved
round-robin over the digits so that any prefix of either file is as close
to class-balanced as possible. Output is gzip-compressed IDX with a fixed
gzip mtime, so the bytes are reproducible.

Usage: make_mnist_subset.py [path/to/mnist_5k.csv.gz] [out_dir]
"""

import csv
import gzip
import io
import os
import struct
import sys

TRAIN_PER_DIGIT = 400
TEST_PER_DIGIT = 100


def locate_csv(argv):
    if len(argv) > 1:
        return argv[1]
    import mlxtend.data  # noqa: F401  (only used to find the file)
    return os.path.join(os.path.dirname(mlxtend.data.__file__), "data",
                        "mnist_5k.csv.gz")


def write_gz(path, payload):
    with open(path, "wb") as raw:
        with gzip.GzipFile(filename="", mode="wb", fileobj=raw, mtime=0) as gz:
            gz.write(payload)


def idx_images(images):
    out = io.BytesIO()
    out.write(struct.pack(">IIII", 2051, len(images), 28, 28))
    for img in images:
        out.write(bytes(img))
    return out.getvalue()


def idx_labels(labels):
    return struct.pack(">II", 2049, len(labels)) + bytes(labels)


def interleave(per_digit):
    rows = []
    for i in range(max(len(v) for v in per_digit)):
        for digit_rows in per_digit:
            if i < len(digit_rows):
                rows.append(digit_rows[i])
    return rows


def main(argv):
    src = locate_csv(argv)
    out_dir = argv[2] if len(argv) > 2 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "mnist-5k")
    by_digit = [[] for _ in range(10)]
    with gzip.open(src, "rt") as fh:
        for row in csv.reader(fh):
            vals = [int(float(v)) for v in row]
            pixels, label = vals[:784], vals[784]
            by_digit[label].append((pixels, label))
    for d, rows in enumerate(by_digit):
        if len(rows) < TRAIN_PER_DIGIT + TEST_PER_DIGIT:
            sys.exit(f"digit {d}: only {len(rows)} rows")

    train = interleave([r[:TRAIN_PER_DIGIT] for r in by_digit])
    test = interleave([r[TRAIN_PER_DIGIT:TRAIN_PER_DIGIT + TEST_PER_DIGIT]
                       for r in by_digit])

    os.makedirs(out_dir, exist_ok=True)
    for name, rows in (("train", train), ("test", test)):
        write_gz(os.path.join(out_dir, f"{name}-images-idx3-ubyte.gz"),
                 idx_images([p for p, _ in rows]))
        write_gz(os.path.join(out_dir, f"{name}-labels-idx1-ubyte.gz"),
                 idx_labels([l for _, l in rows]))
        print(f"{name}: {len(rows)} records")


if __name__ == "__main__":
    main(sys.argv)
