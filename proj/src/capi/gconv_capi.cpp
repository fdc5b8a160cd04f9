#include "gconv/gconv.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "commands.hpp"
#include "session.hpp"

struct gc_session {
  gconv::Instance inst;
};

struct gc_report {
  gconv::cli::Report report;
};

namespace {

thread_local std::string last_message;
thread_local std::string last_json = "{}";
thread_local gc_status last_cause = GC_OK;

gc_status fail(const gconv::Error& e) {
  last_message = std::string(gconv::error_name(e.code())) + ": " + e.what();
  last_json = gconv::cli::error_json(e);
  last_cause = e.cause() ? static_cast<gc_status>(*e.cause()) : GC_OK;
  return static_cast<gc_status>(e.code());
}

gc_status fail_internal(const char* what) {
  last_message = std::string("internal: ") + what;
  last_json = R"({"error":"Internal","message":"internal failure"})";
  last_cause = GC_OK;
  return GC_INTERNAL;
}

void clear() {
  last_message.clear();
  last_json = "{}";
  last_cause = GC_OK;
}

// Every entry point funnels exceptions through here; nothing escapes the C boundary.
template <class F>
gc_status guarded(F&& f) {
  clear();
  try {
    f();
    return GC_OK;
  } catch (const gconv::Error& e) {
    return fail(e);
  } catch (const std::bad_alloc&) {
    return fail_internal("out of memory");
  } catch (const std::exception& e) {
    return fail_internal(e.what());
  } catch (...) {
    return fail_internal("unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

gc_status null_arg(const char* what) {
  return fail(gconv::Error(gconv::ErrorCode::InvalidArgument, std::string(what) + " is NULL"));
}

}  // namespace

extern "C" {

const char* gc_version(void) { return "0.3.0"; }

gc_status gc_session_load_file(const char* path, gc_session** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!path) return null_arg("path");
  return guarded([&] { *out = new gc_session{gconv::cli::load_session(path)}; });
}

gc_status gc_session_load_string(const char* text, gc_session** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!text) return null_arg("text");
  return guarded([&] { *out = new gc_session{gconv::cli::parse_session(text)}; });
}

void gc_session_free(gc_session* s) { delete s; }

gc_status gc_session_to_json(const gc_session* s, char** out) {
  if (!s || !out) return null_arg("session or out");
  *out = nullptr;
  return guarded([&] { *out = dup(gconv::cli::print_session(s->inst)); });
}

gc_status gc_session_set_param(gc_session* s, const char* name, const char* value) {
  if (!s || !name || !value) return null_arg("session, name or value");
  return guarded([&] { gconv::cli::set_param(s->inst, name, value); });
}

gc_status gc_run(const gc_session* s, const char* const* args, size_t nargs, gc_report** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!s) return null_arg("session");
  if (nargs && !args) return null_arg("args");
  return guarded([&] {
    std::vector<std::string> argv;
    for (size_t i = 0; i < nargs; ++i) {
      if (!args[i]) throw gconv::Error(gconv::ErrorCode::InvalidArgument, "argument is NULL");
      argv.emplace_back(args[i]);
    }
    auto r = std::make_unique<gc_report>(gc_report{gconv::cli::run_command(s->inst, argv)});
    *out = r.release();
  });
}

int gc_report_exit_code(const gc_report* r) { return r ? r->report.exit_code : 4; }
const char* gc_report_text(const gc_report* r) { return r ? r->report.text.c_str() : ""; }
const char* gc_report_json(const gc_report* r) { return r ? r->report.json.c_str() : "{}"; }
void gc_report_free(gc_report* r) { delete r; }

void gc_string_free(char* s) { std::free(s); }

const char* gc_last_error(void) { return last_message.c_str(); }
const char* gc_last_error_json(void) { return last_json.c_str(); }
gc_status gc_last_error_cause(void) { return last_cause; }

const char* gc_status_name(gc_status code) {
  if (code == GC_OK) return "Ok";
  if (code == GC_INTERNAL) return "Internal";
  return gconv::error_name(static_cast<gconv::ErrorCode>(code)).data();
}

int gc_exit_code_for_status(gc_status code) {
  if (code == GC_OK) return 0;
  if (code == GC_INTERNAL) return 4;
  return gconv::cli::exit_code_for(static_cast<gconv::ErrorCode>(code));
}

size_t gc_property_count(void) { return gconv::all_properties().size(); }

const char* gc_property_name(size_t i) {
  const auto& all = gconv::all_properties();
  return i < all.size() ? gconv::property_name(all[i]).data() : nullptr;
}

}  // extern "C"
