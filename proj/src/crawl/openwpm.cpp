#include "geotrack/crawl/openwpm.hpp"

#include <fstream>
#include <memory>
#include <set>

#include <sqlite3.h>

#include <json.hpp>

namespace geotrack::crawl {

namespace {

struct DbCloser {
    void operator()(sqlite3* db) const { sqlite3_close(db); }
};
struct StmtFinalizer {
    void operator()(sqlite3_stmt* stmt) const { sqlite3_finalize(stmt); }
};
using DbHandle = std::unique_ptr<sqlite3, DbCloser>;
using StmtHandle = std::unique_ptr<sqlite3_stmt, StmtFinalizer>;

DbHandle open_db(const std::filesystem::path& path, int flags) {
    sqlite3* raw = nullptr;
    const int rc = sqlite3_open_v2(path.c_str(), &raw, flags, nullptr);
    DbHandle db(raw);
    if (rc != SQLITE_OK) {
        throw IngestError(ErrorKind::io, "cannot open database " + path.string() + ": "
                                                 + (raw ? sqlite3_errmsg(raw) : sqlite3_errstr(rc)));
    }
    return db;
}

StmtHandle prepare(sqlite3* db, const std::string& sql) {
    sqlite3_stmt* raw = nullptr;
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &raw, nullptr) != SQLITE_OK) {
        throw IngestError(ErrorKind::schema, std::string("query failed: ") + sqlite3_errmsg(db));
    }
    return StmtHandle(raw);
}

void exec(sqlite3* db, const char* sql) {
    char* err = nullptr;
    if (sqlite3_exec(db, sql, nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "unknown error";
        sqlite3_free(err);
        throw IngestError(ErrorKind::io, "sqlite: " + msg);
    }
}

std::set<std::string> table_columns(sqlite3* db, const std::string& table) {
    auto stmt = prepare(db, "PRAGMA table_info(" + table + ")");
    std::set<std::string> cols;
    while (sqlite3_step(stmt.get()) == SQLITE_ROW) {
        cols.insert(reinterpret_cast<const char*>(sqlite3_column_text(stmt.get(), 1)));
    }
    return cols;
}

std::string text_column(sqlite3_stmt* stmt, int col) {
    const auto* p = sqlite3_column_text(stmt, col);
    return p ? reinterpret_cast<const char*>(p) : std::string{};
}

std::optional<std::string> nullable_text(sqlite3_stmt* stmt, int col) {
    if (sqlite3_column_type(stmt, col) == SQLITE_NULL) {
        return std::nullopt;
    }
    return text_column(stmt, col);
}

void require_columns(sqlite3* db, const std::string& table, std::initializer_list<const char*> required) {
    const auto cols = table_columns(db, table);
    if (cols.empty()) {
        throw IngestError(ErrorKind::schema, "missing table '" + table + "'");
    }
    for (const char* c : required) {
        if (!cols.contains(c)) {
            throw IngestError(ErrorKind::schema, "table '" + table + "' lacks column '" + c + "'");
        }
    }
}

// Optional columns are selected as NULL when absent.
std::string column_or_null(const std::set<std::string>& cols, const char* name) {
    return cols.contains(name) ? std::string(name) : std::string("NULL");
}

std::vector<VisitRecord> read_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError(ErrorKind::sidecar, "cannot open sidecar " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(ErrorKind::sidecar, std::string("invalid sidecar JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("visits") || !doc["visits"].is_array()) {
        throw IngestError(ErrorKind::sidecar, "sidecar must be an object with a 'visits' array");
    }
    std::vector<VisitRecord> visits;
    for (const auto& v : doc["visits"]) {
        try {
            visits.push_back({v.at("visit_id").get<VisitId>(), v.at("country").get<std::string>(),
                              v.at("site_rank").get<std::int64_t>(), v.at("site_domain").get<std::string>(),
                              v.value("started_at", std::string{})});
        } catch (const nlohmann::json::exception& e) {
            throw IngestError(ErrorKind::sidecar, std::string("malformed sidecar entry: ") + e.what());
        }
    }
    return visits;
}

}  // namespace

CrawlDataset ingest_openwpm_db(const std::filesystem::path& db_path, const std::filesystem::path& sidecar_path) {
    if (!std::filesystem::exists(db_path)) {
        throw IngestError(ErrorKind::io, "no such database " + db_path.string());
    }
    auto db = open_db(db_path, SQLITE_OPEN_READONLY);
    require_columns(db.get(), "http_requests", {"visit_id", "url", "top_url"});
    require_columns(db.get(), "cookies", {"visit_id", "domain"});
    const auto req_cols = table_columns(db.get(), "http_requests");
    const auto cookie_cols = table_columns(db.get(), "cookies");

    auto visits = read_sidecar(sidecar_path);
    std::set<VisitId> known;
    for (const auto& v : visits) {
        known.insert(v.visit_id);
    }
    std::set<VisitId> missing;

    std::vector<HttpRequestRecord> requests;
    {
        auto stmt = prepare(db.get(), "SELECT visit_id, url, top_url, " + column_or_null(req_cols, "referrer") + ", "
                                              + column_or_null(req_cols, "time_stamp")
                                              + " FROM http_requests ORDER BY rowid");
        while (sqlite3_step(stmt.get()) == SQLITE_ROW) {
            HttpRequestRecord r{sqlite3_column_int64(stmt.get(), 0), text_column(stmt.get(), 1),
                                text_column(stmt.get(), 2), nullable_text(stmt.get(), 3),
                                text_column(stmt.get(), 4)};
            if (!known.contains(r.visit_id)) {
                missing.insert(r.visit_id);
            }
            requests.push_back(std::move(r));
        }
    }
    std::vector<CookieRecord> cookies;
    {
        auto stmt = prepare(db.get(), "SELECT visit_id, domain, " + column_or_null(cookie_cols, "name") + ", "
                                              + column_or_null(cookie_cols, "time_stamp")
                                              + " FROM cookies ORDER BY rowid");
        while (sqlite3_step(stmt.get()) == SQLITE_ROW) {
            CookieRecord c{sqlite3_column_int64(stmt.get(), 0), text_column(stmt.get(), 1),
                           text_column(stmt.get(), 2), text_column(stmt.get(), 3)};
            if (!known.contains(c.visit_id)) {
                missing.insert(c.visit_id);
            }
            cookies.push_back(std::move(c));
        }
    }
    if (!missing.empty()) {
        std::string ids;
        for (auto id : missing) {
            ids += (ids.empty() ? "" : ", ") + std::to_string(id);
        }
        throw IngestError(ErrorKind::sidecar, "no sidecar metadata for visit_id " + ids);
    }
    return CrawlDataset(std::move(visits), std::move(requests), std::move(cookies),
                        "openwpm:" + db_path.filename().string());
}

void export_openwpm_db(const CrawlDataset& dataset, const std::filesystem::path& db_path,
                       const std::filesystem::path& sidecar_path) {
    std::filesystem::remove(db_path);
    auto db = open_db(db_path, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE);
    exec(db.get(),
         "CREATE TABLE http_requests (id INTEGER PRIMARY KEY, crawl_id INTEGER, url TEXT NOT NULL, "
         "top_url TEXT, referrer TEXT, time_stamp TEXT, visit_id INTEGER NOT NULL);"
         "CREATE TABLE cookies (id INTEGER PRIMARY KEY, crawl_id INTEGER, domain TEXT NOT NULL, name TEXT, "
         "time_stamp TEXT, visit_id INTEGER NOT NULL);"
         "BEGIN;");

    auto bind_text = [](sqlite3_stmt* stmt, int col, const std::string& s) {
        sqlite3_bind_text(stmt, col, s.c_str(), static_cast<int>(s.size()), SQLITE_TRANSIENT);
    };
    {
        auto stmt = prepare(db.get(),
                            "INSERT INTO http_requests (crawl_id, url, top_url, referrer, time_stamp, visit_id) "
                            "VALUES (1, ?, ?, ?, ?, ?)");
        for (const auto& r : dataset.requests()) {
            bind_text(stmt.get(), 1, r.url);
            bind_text(stmt.get(), 2, r.top_url);
            if (r.referrer) {
                bind_text(stmt.get(), 3, *r.referrer);
            } else {
                sqlite3_bind_null(stmt.get(), 3);
            }
            bind_text(stmt.get(), 4, r.ts);
            sqlite3_bind_int64(stmt.get(), 5, r.visit_id);
            if (sqlite3_step(stmt.get()) != SQLITE_DONE) {
                throw IngestError(ErrorKind::io, std::string("insert failed: ") + sqlite3_errmsg(db.get()));
            }
            sqlite3_reset(stmt.get());
        }
    }
    {
        auto stmt = prepare(db.get(),
                            "INSERT INTO cookies (crawl_id, domain, name, time_stamp, visit_id) VALUES (1, ?, ?, ?, ?)");
        for (const auto& c : dataset.cookies()) {
            bind_text(stmt.get(), 1, c.domain);
            bind_text(stmt.get(), 2, c.name);
            bind_text(stmt.get(), 3, c.ts);
            sqlite3_bind_int64(stmt.get(), 4, c.visit_id);
            if (sqlite3_step(stmt.get()) != SQLITE_DONE) {
                throw IngestError(ErrorKind::io, std::string("insert failed: ") + sqlite3_errmsg(db.get()));
            }
            sqlite3_reset(stmt.get());
        }
    }
    exec(db.get(), "COMMIT;");

    nlohmann::json visits = nlohmann::json::array();
    for (const auto& v : dataset.visits()) {
        visits.push_back({{"visit_id", v.visit_id},
                          {"country", v.country},
                          {"site_domain", v.site_domain},
                          {"site_rank", v.site_rank},
                          {"started_at", v.started_at}});
    }
    std::ofstream out(sidecar_path, std::ios::binary);
    if (!out) {
        throw IngestError(ErrorKind::io, "cannot write sidecar " + sidecar_path.string());
    }
    out << nlohmann::json{{"visits", std::move(visits)}}.dump(2) << '\n';
}

}  // namespace geotrack::crawl
