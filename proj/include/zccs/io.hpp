#pragma once

// Code-set files. JSON carries the construction parameters plus the
// K x M x N phase array and round-trips bit-exactly; CSV holds one line
// per sequence (code_index,row_index,phase_0,...,phase_{N-1}) and no
// metadata. Phases are stored as integers in Z_q, never as floating
// complex values.

#include "zccs/construct.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace zccs {

struct FileFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodeSetFile {
  int format_version = 1;
  std::string generator;  // provenance only; excluded from comparisons
  ConstructionParams params;
  std::vector<PhaseMatrix> codes;
};

CodeSetFile to_file(const CodeSet& set, std::string generator);
CodeSet to_code_set(const CodeSetFile& file);  // shape- and range-checked

void write_json(const CodeSetFile& file, const std::string& path);
CodeSetFile read_json(const std::string& path);

/// signs: render binary phases as +/- (q = 2 only).
void write_csv(const std::vector<PhaseMatrix>& codes, const std::string& path,
               bool signs = false);
std::vector<PhaseMatrix> read_csv(const std::string& path);

/// Unit-circle entries as re/im pairs at 17 significant digits.
void write_complex_csv(const std::vector<PhaseMatrix>& codes, int q,
                       const std::string& path);

}  // namespace zccs
