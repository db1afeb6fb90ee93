// Copyright 2026 The soeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "soeval/sandbox/driver.hpp"

namespace soeval::sandbox {

std::string_view driver_source() {
  static constexpr std::string_view kDriver = R"PY(
import builtins, io, os, sys, traceback

_write = os.write
_exit = os._exit


def _report(line):
    try:
        _write(3, ("SOEVAL-RESULT " + line.replace("\n", " ") + "\n").encode("utf-8", "replace"))
    except OSError:
        pass


def _guard(root):
    import shutil, socket, subprocess

    root = os.path.realpath(root)

    def inside(path):
        if isinstance(path, int):
            return True
        try:
            resolved = os.path.realpath(os.fsdecode(os.fspath(path)))
        except (TypeError, ValueError):
            return False
        return resolved == root or resolved.startswith(root + os.sep)

    def deny(what):
        def denied(*args, **kwargs):
            raise PermissionError(what + " is disabled in the sandbox")
        return denied

    real_open = builtins.open

    def guarded_open(file, mode="r", *args, **kwargs):
        if any(c in mode for c in "wax+") and not inside(file):
            raise PermissionError("write outside the sandbox directory: %r" % (file,))
        return real_open(file, mode, *args, **kwargs)

    builtins.open = guarded_open
    io.open = guarded_open

    real_os_open = os.open
    write_flags = os.O_WRONLY | os.O_RDWR | os.O_CREAT | os.O_TRUNC | os.O_APPEND

    def guarded_os_open(path, flags, mode=0o777, *args, **kwargs):
        if flags & write_flags and not inside(path):
            raise PermissionError("write outside the sandbox directory: %r" % (path,))
        return real_os_open(path, flags, mode, *args, **kwargs)

    os.open = guarded_os_open

    for name in ("mkdir", "makedirs"):
        real = getattr(os, name)

        def guarded_mkdir(path, *args, _real=real, **kwargs):
            if not inside(path):
                raise PermissionError("write outside the sandbox directory: %r" % (path,))
            return _real(path, *args, **kwargs)

        setattr(os, name, guarded_mkdir)

    for name in ("system", "popen", "kill", "killpg", "fork", "forkpty", "putenv", "unsetenv",
                 "remove", "removedirs", "rmdir", "unlink", "rename", "renames", "replace",
                 "truncate", "chmod", "fchmod", "lchmod", "chown", "fchown", "lchown", "chroot",
                 "chdir", "fchdir", "setuid", "setgid", "link", "symlink", "mkfifo", "mknod",
                 "execv", "execve", "execvp", "execvpe", "execl", "execle", "execlp", "execlpe",
                 "spawnv", "spawnve", "spawnvp", "spawnl", "posix_spawn", "posix_spawnp"):
        if hasattr(os, name):
            setattr(os, name, deny("os." + name))
    for name in ("rmtree", "move", "chown"):
        setattr(shutil, name, deny("shutil." + name))
    for name in ("Popen", "run", "call", "check_call", "check_output", "getoutput", "getstatusoutput"):
        setattr(subprocess, name, deny("subprocess." + name))

    class DeniedSocket(socket.socket):
        def __init__(self, *args, **kwargs):
            raise PermissionError("network access is disabled in the sandbox")

    socket.socket = DeniedSocket
    for name in ("create_connection", "create_server", "socketpair", "fromfd",
                 "getaddrinfo", "gethostbyname", "gethostbyname_ex", "gethostbyaddr"):
        if hasattr(socket, name):
            setattr(socket, name, deny("socket." + name))

    # pathlib (3.10) may be imported already and holds the original functions.
    accessor = getattr(sys.modules.get("pathlib"), "_NormalAccessor", None)
    if accessor is not None:
        accessor.open = staticmethod(guarded_open)
        for name in ("mkdir", "unlink", "rmdir", "rename", "replace", "symlink", "link", "chmod", "lchmod"):
            if hasattr(accessor, name) and hasattr(os, name):
                setattr(accessor, name, staticmethod(getattr(os, name)))


def _main():
    mode, path = sys.argv[1], sys.argv[2]
    with open(path, "rb") as handle:
        source = handle.read()
    try:
        code = compile(source, "program.py", "exec", dont_inherit=True)
    except (SyntaxError, ValueError, OverflowError, MemoryError, RecursionError) as exc:
        detail = type(exc).__name__
        if isinstance(exc, SyntaxError):
            detail += ": %s (line %s)" % (exc.msg, exc.lineno)
        _report("syntax " + detail)
        _exit(0)
    if mode == "compile":
        _report("ok")
        _exit(0)

    _guard(os.getcwd())
    sys.argv = ["program.py"]
    namespace = {"__name__": "__main__", "__builtins__": builtins}
    try:
        exec(code, namespace)
    except BaseException as exc:
        try:
            sys.stdout.flush()
            traceback.print_exception(type(exc), exc, exc.__traceback__)
            sys.stderr.flush()
        except BaseException:
            pass
        _report("exception " + type(exc).__name__)
        _exit(0)
    try:
        sys.stdout.flush()
        sys.stderr.flush()
    except BaseException:
        pass
    _report("ok")
    _exit(0)


_main()
)PY";
  return kDriver;
}

}  // namespace soeval::sandbox
