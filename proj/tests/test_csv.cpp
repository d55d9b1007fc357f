#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uplink/csv.hpp"

using namespace uplink::io;

TEST_CASE("CSV rendering") {
    CsvTable t({"threshold_db", "p_c"});
    t.add_row({-10.0, 0.123456789012});
    t.add_row({INFINITY, NAN});
    CHECK(t.to_string() == "threshold_db,p_c\n-10,0.123456789\ninf,nan\n");
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(CsvTable({}), std::invalid_argument);
    CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("CSV files") {
    const auto dir = std::filesystem::temp_directory_path() / "uplink_csv_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    CsvTable t({"a_linear"});
    t.add_row({1.5});
    t.write(dir / "x.csv");
    std::ifstream in(dir / "x.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "a_linear\n1.5\n");
    std::filesystem::remove_all(dir.parent_path());
}
