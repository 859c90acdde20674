#include <pthread.h>

#include <iostream>

#include "writ/cli.hpp"

namespace {

struct Job {
  std::vector<std::string> args;
  int code = 0;
};

void* run(void* p) {
  auto* job = static_cast<Job*>(p);
  job->code = writ::run_cli(job->args, std::cout, std::cerr);
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  Job job{{argv + 1, argv + argc}};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, std::size_t{1} << 30);
  pthread_t tid;
  if (pthread_create(&tid, &attr, run, &job) != 0) return writ::run_cli(job.args, std::cout, std::cerr);
  pthread_join(tid, nullptr);
  return job.code;
}
