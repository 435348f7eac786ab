#pragma once
#include <fstream>
#include <string>
#include <vector>

namespace hawkes {

// fixed-format double rendering so identical runs produce identical bytes
std::string format_double(double v);

// Reads the named columns (in order) from a CSV with a header row.
// Lines starting with '#' are skipped.
std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  const std::vector<std::string>& names);

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    void comment(const std::string& line);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);
    void row_doubles(const std::vector<double>& cells);

  private:
    std::ofstream out_;
};

}
