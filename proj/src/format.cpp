#include "sixbar/format.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <system_error>

#include "sixbar/error.hpp"

namespace sixbar {

std::string fixed6(double value) {
  // -0.000000 would make byte-identical outputs depend on rounding noise.
  if (std::abs(value) < 5e-7) value = 0.0;
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(6) << value;
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    SIXBAR_REQUIRE(out.good(), ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    SIXBAR_REQUIRE(out.good(), ErrorCode::Io, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot move output into place at " + path.string());
  }
}

}  // namespace sixbar
