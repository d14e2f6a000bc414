#include <qid/harness.hpp>

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const qid::SuiteConfig cfg = qid::parse_args(args);
    const qid::Report report = qid::run_suite(cfg);
    std::cout << qid::emit_report(report, cfg.format);
    return qid::report_exit_code(report);
  } catch (const qid::HelpRequested& h) {
    std::cout << h.text;
    return 0;
  } catch (const qid::UsageError& e) {
    std::cerr << "qid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qid: " << e.what() << "\n";
    return 1;
  }
}
