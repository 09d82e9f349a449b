// Copyright 2026 The fdccr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FDCCR_CLI_HPP_
#define FDCCR_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace fdccr {

// Exit codes: 0 success, 1 invalid input or I/O failure, 2 infeasible
// single-instance solve.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fdccr

#endif  // FDCCR_CLI_HPP_
