// Copyright 2026 The edner Authors.
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

// The `edner` command line. Subcommands: ingest, stats, filter, split,
// postprocess, evaluate, export-finetune.
//
// Exit status: 0 on success, 1 on a data or validation error, 2 on a usage
// error. Data goes to files or `out`; messages go to `err`.

#ifndef EDNER_CLI_H_
#define EDNER_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace edner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edner::cli

#endif  // EDNER_CLI_H_
