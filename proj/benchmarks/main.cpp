// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
