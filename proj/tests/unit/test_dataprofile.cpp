#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "t2i/dataprofile.hpp"
#include "t2i/error.hpp"

using namespace t2i;

namespace {

ErrorCode ingest_error(std::string_view bytes) {
  try {
    ingest_csv(bytes, "t");
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << bytes;
  return ErrorCode::IoError;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Raw cells in canonical spelling so a raw census equals a typed one.
struct RandomCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string bytes;
};

RandomCsv random_csv(std::mt19937_64& rng) {
  const char* words[] = {"SRH", "CSK", "a,b", "say \"hi\"", "line\nbreak", "caf\xc3\xa9", "x y"};
  RandomCsv out;
  int n_cols = 1 + static_cast<int>(rng() % 6);
  int n_rows = 1 + static_cast<int>(rng() % 25);
  std::vector<int> kinds;
  for (int c = 0; c < n_cols; ++c) {
    out.header.push_back("col" + std::to_string(c));
    kinds.push_back(static_cast<int>(rng() % 5));
  }
  for (int r = 0; r < n_rows; ++r) {
    std::vector<std::string> row;
    for (int c = 0; c < n_cols; ++c) {
      if (rng() % 8 == 0) {
        row.emplace_back();
        continue;
      }
      switch (kinds[c]) {
        case 0: row.push_back(std::to_string(static_cast<int>(rng() % 21) - 10)); break;
        case 1: row.push_back(format_real(static_cast<double>(rng() % 400) / 4.0 + 0.125)); break;
        case 2: {
          char buf[16];
          std::snprintf(buf, sizeof buf, "20%02d-%02d-%02d", static_cast<int>(rng() % 30),
                        1 + static_cast<int>(rng() % 12), 1 + static_cast<int>(rng() % 28));
          row.emplace_back(buf);
          break;
        }
        case 3: row.push_back(rng() % 2 ? "true" : "false"); break;
        default: row.push_back(words[rng() % std::size(words)]); break;
      }
    }
    out.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < out.header.size(); ++i) out.bytes += (i ? "," : "") + out.header[i];
  out.bytes += "\r\n";
  for (const auto& row : out.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out.bytes += (i ? "," : "") + csv_field(row[i]);
    out.bytes += "\n";
  }
  return out;
}

}  // namespace

TEST(Ingest, SmallCsvProfile) {
  auto ds = ingest_csv("p,r\na,1\nb,2\nc,3", "t");
  EXPECT_EQ(ds.profile.row_count, 3u);
  EXPECT_EQ(ds.profile.column_count, 2u);
  const auto* r = ds.profile.find("r");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->inferred_type, ColumnType::Integer);
  EXPECT_EQ(r->role, ColumnRole::Continuous);
  EXPECT_EQ(ds.rows[2][1], Cell{std::int64_t{3}});
}

TEST(Ingest, NumericTextIsCoerced) {
  auto ds = ingest_csv("n\n\"1\"\n\"2\"\n\"3\"\n", "t");
  EXPECT_EQ(ds.profile.columns[0].inferred_type, ColumnType::Integer);
}

TEST(Ingest, Errors) {
  EXPECT_EQ(ingest_error("p,r\n"), ErrorCode::EmptyFile);
  EXPECT_EQ(ingest_error(""), ErrorCode::EmptyFile);
  EXPECT_EQ(ingest_error("a,b\n1,2\n3\n"), ErrorCode::RaggedRow);
  EXPECT_EQ(ingest_error("a\n\xff\xfe\n"), ErrorCode::NotUtf8);
}

TEST(Ingest, NullsArePreserved) {
  auto ds = ingest_csv("a,b\n1,\n,x\n3,\"\"\n", "t");
  ASSERT_EQ(ds.rows.size(), 3u);
  EXPECT_TRUE(is_null(ds.rows[0][1]));
  EXPECT_TRUE(is_null(ds.rows[1][0]));
  EXPECT_TRUE(is_null(ds.rows[2][1]));
  EXPECT_EQ(ds.profile.columns[0].null_count, 1u);
  EXPECT_EQ(ds.profile.columns[1].null_count, 2u);
}

TEST(Ingest, HeaderNamesUniqueAfterCaseFolding) {
  auto ds = ingest_csv("Runs,runs,\n1,2,3\n", "t");
  std::set<std::string> folded;
  for (const auto& c : ds.profile.columns) folded.insert(ascii_lower(c.name));
  EXPECT_EQ(folded.size(), 3u);
}

TEST(Ingest, BundledFixtures) {
  auto odi = ingest_csv(read_file(T2I_DATA_DIR "/odi_batting.csv"), "odi_batting");
  EXPECT_EQ(odi.profile.row_count, 34u);
  EXPECT_EQ(odi.profile.find("runs")->inferred_type, ColumnType::Integer);
  EXPECT_EQ(odi.profile.find("average")->inferred_type, ColumnType::Real);
  EXPECT_EQ(odi.profile.find("average")->null_count, 1u);
  EXPECT_EQ(odi.profile.find("player_name")->role, ColumnRole::Categorical);

  auto bowl = ingest_csv(read_file(T2I_DATA_DIR "/bowling_odi.csv"), "bowling");
  EXPECT_EQ(bowl.profile.find("Wkts")->role, ColumnRole::Continuous);
  EXPECT_EQ(bowl.profile.primary_key, std::optional<std::string>("Player"));
}

TEST(InferColumn, Examples) {
  std::vector<std::string> dates = {"2024-04-09", "2008-05-17"};
  auto d = infer_column("date", dates);
  EXPECT_EQ(d.inferred_type, ColumnType::Date);
  EXPECT_EQ(d.role, ColumnRole::Temporal);

  std::vector<std::string> nums = {"10", "7", "3"};
  auto n = infer_column("runs", nums);
  EXPECT_EQ(n.inferred_type, ColumnType::Integer);
  EXPECT_EQ(n.role, ColumnRole::Continuous);

  std::vector<std::string> teams = {"SRH", "CSK", "SRH"};
  auto t = infer_column("team", teams);
  EXPECT_EQ(t.inferred_type, ColumnType::Text);
  EXPECT_EQ(t.role, ColumnRole::Categorical);
  EXPECT_EQ(t.distinct_count, 2u);
}

TEST(InferColumn, TypeLattice) {
  std::vector<std::string> mixed = {"1", "2.5", ""};
  EXPECT_EQ(infer_column("x", mixed).inferred_type, ColumnType::Real);
  std::vector<std::string> texty = {"1", "two"};
  EXPECT_EQ(infer_column("x", texty).inferred_type, ColumnType::Text);
  std::vector<std::string> dt = {"2024/04/09 10:30", "09-04-2024 07:05:09"};
  auto c = infer_column("when", dt);
  EXPECT_EQ(c.inferred_type, ColumnType::DateTime);
  EXPECT_EQ(c.role, ColumnRole::Temporal);
  std::vector<std::string> bools = {"true", "FALSE", "true"};
  EXPECT_EQ(infer_column("flag", bools).inferred_type, ColumnType::Boolean);
  std::vector<std::string> bad_date = {"2024-13-01"};
  EXPECT_EQ(infer_column("d", bad_date).inferred_type, ColumnType::Text);
}

TEST(InferColumn, Identifiers) {
  std::vector<std::string> ids = {"7", "3", "9"};
  EXPECT_EQ(infer_column("match_id", ids).role, ColumnRole::Identifier);
  std::vector<std::string> seq = {"1", "2", "3"};
  EXPECT_EQ(infer_column("n", seq).role, ColumnRole::Identifier);
  std::vector<std::string> dup = {"1", "1", "2"};
  EXPECT_EQ(infer_column("match_id", dup).role, ColumnRole::Continuous);
}

TEST(InferColumn, CategoricalCapable) {
  std::vector<std::string> small = {"1", "2", "1", "2", "1", "2"};
  auto c = infer_column("over", small);
  EXPECT_TRUE(c.categorical_capable(6));
  std::vector<std::string> wide = {"5", "8", "13", "21"};
  EXPECT_FALSE(infer_column("runs", wide).categorical_capable(4));
}

TEST(PrimaryKey, Examples) {
  auto a = ingest_csv("city,match_id\nPune,3\nPune,8\nDelhi,5\n", "t");
  EXPECT_EQ(detect_primary_key(a), std::optional<std::string>("match_id"));
  auto b = ingest_csv("x,y\n1,a\n1,a\n", "t");
  EXPECT_EQ(detect_primary_key(b), std::nullopt);
  auto c = ingest_csv("name,code\nann,Q\nbob,R\n", "t");
  EXPECT_EQ(detect_primary_key(c), std::optional<std::string>("name"));
  auto d = ingest_csv("name,x\nann,1\n,2\n", "t");
  EXPECT_EQ(detect_primary_key(d), std::optional<std::string>("x"));
}

TEST(RenderDdl, Examples) {
  TableProfile p;
  p.table_name = "t";
  p.columns = {{"a", ColumnType::Integer, ColumnRole::Identifier, 0, 2},
               {"b", ColumnType::Text, ColumnRole::Categorical, 0, 1}};
  p.column_count = 2;
  p.row_count = 2;
  p.primary_key = "a";
  EXPECT_EQ(render_ddl(p), "CREATE TABLE t (a INTEGER PRIMARY KEY, b TEXT);");
  p.primary_key.reset();
  EXPECT_EQ(render_ddl(p), "CREATE TABLE t (a INTEGER, b TEXT);");
  p.columns[1].name = "my col";
  EXPECT_EQ(render_ddl(p), "CREATE TABLE t (a INTEGER, \"my col\" TEXT);");
}

TEST(RenderDdl, AllTypeKeywords) {
  auto ds = ingest_csv("i,r,b,d,dt,s\n1,1.5,true,2020-01-02,2020-01-02 03:04,x\n"
                       "2,2.5,false,2020-01-03,2020-01-02 03:05,y\n",
                       "t");
  EXPECT_EQ(render_ddl(ds.profile),
            "CREATE TABLE t (i INTEGER PRIMARY KEY, r REAL, b BOOLEAN, d DATE, dt DATETIME, s TEXT);");
}

TEST(TableName, FromFilename) {
  EXPECT_EQ(table_name_from_filename("Bowling ODI.csv"), "Bowling_ODI");
  EXPECT_EQ(table_name_from_filename("/tmp/x/odi-2024.csv"), "odi_2024");
  EXPECT_EQ(table_name_from_filename("2024.csv"), "t_2024");
}

TEST(ProfileJson, RoundTrip) {
  auto ds = ingest_csv(read_file(T2I_DATA_DIR "/bowling_odi.csv"), "bowling");
  Json j = to_json(ds.profile);
  EXPECT_EQ(table_profile_from_json(j), ds.profile);
  EXPECT_EQ(j["columns"][0]["inferred_type"], "text");
}

TEST(ProfileProperty, LosslessCensus) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    auto csv = random_csv(rng);
    auto ds = ingest_csv(csv.bytes, "t");
    ASSERT_EQ(ds.profile.row_count, csv.rows.size());
    std::size_t expected_total = 0, actual_total = 0;
    for (std::size_t c = 0; c < csv.header.size(); ++c) {
      std::set<std::string> distinct;
      std::size_t nulls = 0;
      for (const auto& row : csv.rows) {
        if (row[c].empty()) {
          ++nulls;
        } else {
          distinct.insert(row[c]);
        }
      }
      const auto& col = ds.profile.columns[c];
      EXPECT_EQ(col.distinct_count, distinct.size()) << csv.bytes;
      EXPECT_EQ(col.null_count, nulls);
      EXPECT_LE(col.distinct_count, ds.profile.row_count);
      expected_total += distinct.size();
      actual_total += col.distinct_count;
    }
    EXPECT_EQ(expected_total, actual_total);
  }
}

TEST(ProfileProperty, CoercionSoundness) {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    auto ds = ingest_csv(random_csv(rng).bytes, "t");
    for (std::size_t c = 0; c < ds.profile.column_count; ++c) {
      const auto type = ds.profile.columns[c].inferred_type;
      for (const auto& row : ds.rows) {
        const Cell& cell = row[c];
        if (is_null(cell)) continue;
        const std::string text = render_cell(cell);
        Cell back;
        switch (type) {
          case ColumnType::Integer: back = *parse_integer(text); break;
          case ColumnType::Real: back = *parse_real(text); break;
          case ColumnType::Date: back = *parse_date(text); break;
          case ColumnType::DateTime: back = *parse_datetime(text); break;
          case ColumnType::Boolean: back = text == "true"; break;
          case ColumnType::Text: back = text; break;
        }
        EXPECT_EQ(back, cell) << text;
      }
    }
  }
}

TEST(ProfileProperty, RoleTypeConsistency) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    auto ds = ingest_csv(random_csv(rng).bytes, "t");
    for (const auto& c : ds.profile.columns) {
      if (c.role == ColumnRole::Continuous) EXPECT_TRUE(is_numeric(c.inferred_type));
      if (c.role == ColumnRole::Temporal) EXPECT_TRUE(is_temporal(c.inferred_type));
    }
    if (ds.profile.primary_key) {
      const auto* pk = ds.profile.find(*ds.profile.primary_key);
      EXPECT_EQ(pk->distinct_count, ds.profile.row_count);
      EXPECT_EQ(pk->null_count, 0u);
    }
  }
}

TEST(ProfileProperty, Determinism) {
  std::mt19937_64 rng(14);
  for (int iter = 0; iter < 100; ++iter) {
    auto csv = random_csv(rng);
    auto a = ingest_csv(csv.bytes, "t");
    auto b = ingest_csv(csv.bytes, "t");
    EXPECT_EQ(a, b);
    EXPECT_EQ(render_ddl(a.profile), render_ddl(b.profile));
  }
}
