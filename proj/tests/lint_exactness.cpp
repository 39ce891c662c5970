// Exactness lint: the library, CLI, and tests must never touch
// floating-point types.  Scans the source tree for forbidden tokens.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool has_token(const std::string& text, const std::string& token, size_t* pos_out) {
  size_t pos = 0;
  while ((pos = text.find(token, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
    size_t end = pos + token.size();
    bool right_ok = end >= text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) {
      *pos_out = pos;
      return true;
    }
    pos = end;
  }
  return false;
}

}  // namespace

int main() {
  const std::vector<std::string> roots = {"include", "src", "tools", "tests"};
  // "float" also catches float32-style spellings via word boundaries
  const std::vector<std::string> forbidden = {"double", "float", "long_double", "atof", "strtod", "strtof"};
  int failures = 0;
  std::string base = REDVAR_SOURCE_DIR;
  for (const auto& root : roots) {
    fs::path dir = fs::path(base) / root;
    if (!fs::exists(dir)) continue;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      auto ext = entry.path().extension().string();
      if (ext != ".cpp" && ext != ".hpp" && ext != ".h") continue;
      if (entry.path().filename() == "lint_exactness.cpp") continue;
      std::ifstream in(entry.path());
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      for (const auto& tok : forbidden) {
        size_t pos;
        if (has_token(text, tok, &pos)) {
          std::cerr << "forbidden token '" << tok << "' in " << entry.path() << " at offset " << pos << "\n";
          ++failures;
        }
      }
    }
  }
  if (failures == 0) std::cout << "exactness lint: clean\n";
  return failures == 0 ? 0 : 1;
}
