// Copyright 2026 The StormSift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes every reference sample as "<name>.txt" (one value per line, 17
// significant digits) into the directory given as argv[1], for
// shapiro_reference.py to evaluate with an external statistics package.

#include <cstdio>
#include <string>

#include "support/samples.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s OUTDIR\n", argv[0]);
    return 2;
  }
  for (const auto& s : stormsift::testing::reference_samples()) {
    const std::string path = std::string(argv[1]) + "/" + s.name + ".txt";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) return 1;
    for (const double x : stormsift::testing::draw(s)) std::fprintf(f, "%.17g\n", x);
    std::fclose(f);
  }
  return 0;
}
