// Copyright 2026 The pcsketch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCSKETCH_SRC_WIRE_H_
#define PCSKETCH_SRC_WIRE_H_

// Little-endian primitive encoding shared by the binary formats.

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace pcsketch::wire {

void write_magic(std::ostream& out, std::string_view magic);
void write_u8(std::ostream& out, std::uint8_t v);
void write_u32(std::ostream& out, std::uint32_t v);
void write_u64(std::ostream& out, std::uint64_t v);
void write_f64(std::ostream& out, double v);

// Readers throw pcsketch::Error(kFormat) on short reads or bad magic.
void read_magic(std::istream& in, std::string_view magic);
std::uint8_t read_u8(std::istream& in);
std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
double read_f64(std::istream& in);

}  // namespace pcsketch::wire

#endif  // PCSKETCH_SRC_WIRE_H_
